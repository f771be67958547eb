// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The risloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// risloc command line: config-driven PEB sweeps and profile export.
//
//   risloc sweep <config> [--out path] [--threads N] [--gnuplot path]
//   risloc sweep --preset paper-fig4 --out fig4.csv
//   risloc profiles <config> --seed 1 [--ris 0] [--out path]
//   risloc presets [--print name]
//
// Exit status: 0 success, 2 config or usage error, 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "risloc/config.hpp"
#include "risloc/error.hpp"
#include "risloc/simd/kernels.hpp"
#include "risloc/sweep.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

risloc::SweepConfig load(const std::string& path, const std::string& preset) {
  if (!preset.empty() && !path.empty())
    throw risloc::ConfigError({"give either a config file or --preset, not both"});
  if (!preset.empty()) return risloc::load_preset(preset);
  if (path.empty()) throw risloc::ConfigError({"no config file given (or use --preset)"});
  return risloc::load_config(path);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw risloc::ConfigError({"cannot write " + path});
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RIS-aided localization error bounds"};
  app.require_subcommand(1);

  std::string simd;
  app.add_option("--simd", simd, "Kernel backend (scalar, avx2); default picks the best available")
      ->check(CLI::IsMember({"scalar", "avx2"}));

  std::string config_path, preset, out_path, gnuplot_path;
  unsigned threads = 0;
  auto* sweep = app.add_subcommand("sweep", "Run a line or grid sweep and write CSV");
  sweep->add_option("config", config_path, "Config file");
  sweep->add_option("--preset", preset, "Built-in config")
      ->check(CLI::IsMember(risloc::preset_names()));
  sweep->add_option("--out", out_path, "CSV output (default: config 'output' or stdout)");
  sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");
  sweep->add_option("--gnuplot", gnuplot_path, "Also write a gnuplot script stub");

  std::uint64_t seed = 0;
  std::size_t ris_index = 0;
  auto* profiles = app.add_subcommand("profiles", "Export a RIS phase schedule as CSV");
  profiles->add_option("config", config_path, "Config file");
  profiles->add_option("--preset", preset, "Built-in config")
      ->check(CLI::IsMember(risloc::preset_names()));
  profiles->add_option("--seed", seed, "Seed")->required();
  profiles->add_option("--ris", ris_index, "RIS index (0-based)");
  profiles->add_option("--out", out_path, "CSV output (default stdout)");

  std::string print_name;
  auto* presets = app.add_subcommand("presets", "List or print the built-in configs");
  presets->add_option("--print", print_name, "Print one preset")
      ->check(CLI::IsMember(risloc::preset_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (!simd.empty())
      risloc::simd::set_backend(simd == "avx2" ? risloc::simd::Backend::Avx2
                                               : risloc::simd::Backend::Scalar);

    if (*presets) {
      if (print_name.empty()) {
        for (const auto& n : risloc::preset_names()) std::cout << n << '\n';
      } else {
        std::cout << *risloc::preset_text(print_name);
      }
      return 0;
    }

    const risloc::SweepConfig cfg = load(config_path, preset);

    if (*profiles) {
      risloc::Scenario sc = cfg.scenario;
      if (!cfg.elements_per_side.empty())
        for (auto& r : sc.ris_list) r.elements_u = r.elements_v = cfg.elements_per_side.front();
      sc.seed = seed;
      if (ris_index >= sc.ris_list.size())
        throw risloc::ConfigError({"--ris " + std::to_string(ris_index) + " out of range"});
      const risloc::ProfileSet set = risloc::random_profiles(sc);
      write_text(out_path, risloc::schedule_csv(set.schedules[ris_index]));
      return 0;
    }

    const risloc::SweepTable table = risloc::run_sweep(cfg, threads);
    const std::string target = out_path.empty() ? cfg.output : out_path;
    write_text(target, risloc::to_csv(table));
    if (!gnuplot_path.empty())
      write_text(gnuplot_path,
                 risloc::gnuplot_script(table, target.empty() || target == "-" ? "sweep.csv" : target));
    return 0;
  } catch (const risloc::ConfigError& e) {
    std::cerr << "config error:\n" << e.what() << '\n';
    return kExitConfig;
  } catch (const risloc::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const risloc::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const risloc::GeometryError& e) {
    std::cerr << "geometry error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
