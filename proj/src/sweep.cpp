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

#include "risloc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "risloc/error.hpp"

namespace risloc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Point {
  Vec3 position;
  double distance = 0.0;
};

std::vector<Point> line_points(const LineSpec& line) {
  std::vector<Point> pts;
  for (double d : line.distances) pts.push_back({line.origin + d * line.direction, d});
  return pts;
}

std::vector<Point> grid_points(const GridSpec& grid) {
  std::vector<Point> pts;
  const auto xs = grid.xs();
  const auto ys = grid.ys();
  // y-major so consecutive rows of the CSV scan along x
  for (double y : ys)
    for (double x : xs) pts.push_back({Vec3(x, y, grid.z), 0.0});
  return pts;
}

unsigned resolve_threads(unsigned requested, unsigned configured, std::size_t work) {
  unsigned n = requested ? requested : configured;
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(work, 1)));
}

// Runs body(i) for i in [0, count) on a pool and rethrows the exception of
// the lowest failing index.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<int> sizes_of(const SweepConfig& cfg) {
  if (!cfg.elements_per_side.empty()) return cfg.elements_per_side;
  return {0};  // keep the sizes of the template
}

Scenario scenario_for(const SweepConfig& cfg, int side, std::uint64_t seed) {
  Scenario sc = cfg.scenario;
  sc.seed = seed;
  if (side > 0)
    for (auto& r : sc.ris_list) r.elements_u = r.elements_v = side;
  return sc;
}

std::size_t element_total(const Scenario& sc) {
  std::size_t m = 0;
  for (const auto& r : sc.ris_list) m += r.element_count();
  return m;
}

double median_of(std::vector<double> v) {
  for (double x : v)
    if (std::isnan(x)) return kNaN;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

SweepTable run(const SweepConfig& cfg, SweepKind kind, const std::vector<Point>& points,
               unsigned threads) {
  if (cfg.seeds.empty()) throw ValidationError("sweep needs at least one seed");
  const std::vector<int> sides = sizes_of(cfg);
  const std::size_t n_pts = points.size(), n_reg = cfg.regimes.size(), n_m = sides.size(),
                    n_los = cfg.los_modes.size(), n_seed = cfg.seeds.size();

  // results[((((p * n_reg + r) * n_m + m) * n_los + l) * n_seed + s)]
  std::vector<SweepRow> results(n_pts * n_reg * n_m * n_los * n_seed);
  auto slot = [&](std::size_t p, std::size_t r, std::size_t m, std::size_t l, std::size_t s) {
    return (((p * n_reg + r) * n_m + m) * n_los + l) * n_seed + s;
  };

  BoundOptions opts;
  opts.singularity_threshold = cfg.singularity_threshold;

  // One link model alive at a time: the profiles of a 128 x 128 RIS over T
  // transmissions are large.
  for (std::size_t m = 0; m < n_m; ++m) {
    for (std::size_t s = 0; s < n_seed; ++s) {
      const Scenario base = scenario_for(cfg, sides[m], cfg.seeds[s]);
      base.waveform.validate();
      for (const auto& r : base.ris_list) r.validate();
      const ProfileSet profiles = random_profiles(base);
      const LinkModel link(base, profiles);
      const std::size_t elements = element_total(base);
      const std::size_t work = n_pts * n_reg * n_los;
      parallel_for(work, resolve_threads(threads, cfg.threads, work), [&](std::size_t i) {
        const std::size_t l = i % n_los;
        const std::size_t r = (i / n_los) % n_reg;
        const std::size_t p = i / (n_los * n_reg);
        SweepRow& row = results[slot(p, r, m, l, s)];
        row.point = p;
        row.position = points[p].position;
        row.distance = points[p].distance;
        row.regime = cfg.regimes[r];
        row.elements = elements;
        row.seed = cfg.seeds[s];

        Scenario sc = base;
        sc.ue = points[p].position;
        sc.los_mode = cfg.los_modes[l];
        row.los = sc.los_present();
        try {
          sc.validate();
          const PathGains gains = friis_gains(sc);
          const BoundReport rep = evaluate_bounds(link, channel_state(sc, gains), row.regime, opts);
          row.peb = rep.peb;
          row.seb = rep.seb;
          row.identifiable = rep.identifiable;
        } catch (const GeometryError&) {
          row.peb = row.seb = kNaN;
          row.identifiable = false;
        }
      });
    }
  }

  SweepTable table;
  table.kind = kind;
  table.rows.reserve(results.size() + results.size() / n_seed);
  for (std::size_t g = 0; g < results.size() / n_seed; ++g) {
    std::vector<double> pebs, sebs;
    for (std::size_t s = 0; s < n_seed; ++s) {
      const SweepRow& row = results[g * n_seed + s];
      table.rows.push_back(row);
      pebs.push_back(row.peb);
      sebs.push_back(row.seb);
    }
    if (n_seed > 1) {
      SweepRow med = results[g * n_seed];
      med.seed.reset();
      med.peb = median_of(pebs);
      med.seb = median_of(sebs);
      med.identifiable = std::isfinite(med.peb);
      table.rows.push_back(med);
    }
  }
  return table;
}

void append_number(std::string& out, double v, const char* fmt) {
  if (std::isnan(v)) {
    out += "nan";
  } else if (std::isinf(v)) {
    out += v > 0 ? "inf" : "-inf";
  } else {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    out += buf;
  }
}

}  // namespace

SweepTable run_line_sweep(const SweepConfig& config, unsigned threads) {
  return run(config, SweepKind::Line, line_points(config.line), threads);
}

SweepTable run_grid_sweep(const SweepConfig& config, unsigned threads) {
  return run(config, SweepKind::Grid, grid_points(config.grid), threads);
}

SweepTable run_sweep(const SweepConfig& config, unsigned threads) {
  return config.kind == SweepKind::Line ? run_line_sweep(config, threads)
                                        : run_grid_sweep(config, threads);
}

double peb_db(double peb_m) {
  if (std::isnan(peb_m)) return kNaN;
  if (std::isinf(peb_m)) return kInfinity;
  return 10.0 * std::log10(peb_m);
}

std::string to_csv(const SweepTable& table) {
  std::string out = table.kind == SweepKind::Line
                        ? "dist_m,regime,M,los,seed,peb_m,peb_db,seb_s,identifiable\n"
                        : "x_m,y_m,z_m,regime,M,los,seed,peb_m,peb_db,seb_s,identifiable\n";
  for (const SweepRow& r : table.rows) {
    if (table.kind == SweepKind::Line) {
      append_number(out, r.distance, "%.9g");
    } else {
      for (int i = 0; i < 3; ++i) {
        if (i) out += ',';
        append_number(out, r.position[i] == 0.0 ? 0.0 : r.position[i], "%.9g");
      }
    }
    out += ',';
    out += to_string(r.regime);
    out += ',' + std::to_string(r.elements) + ',' + (r.los ? "1" : "0") + ',';
    out += r.seed ? std::to_string(*r.seed) : "median";
    out += ',';
    append_number(out, r.peb, "%.9e");
    out += ',';
    append_number(out, peb_db(r.peb), "%.9e");
    out += ',';
    append_number(out, r.seb, "%.9e");
    out += r.identifiable ? ",1\n" : ",0\n";
  }
  return out;
}

std::string gnuplot_script(const SweepTable& table, const std::string& csv_path) {
  // Median rows exist only with several seeds; otherwise plot the single seed.
  bool has_median = false;
  std::set<std::tuple<int, std::size_t, bool>> curves;
  for (const auto& r : table.rows) {
    has_median = has_median || !r.seed;
    curves.emplace(static_cast<int>(r.regime), r.elements, r.los);
  }
  const std::string seed_test = has_median ? "$7~/median/" : "1";
  std::ostringstream g;
  g << "# gnuplot script for " << csv_path << "\n";
  g << "set datafile separator ','\n";
  if (table.kind == SweepKind::Line) {
    g << "set logscale xy\nset xlabel 'distance (m)'\nset ylabel 'PEB (m)'\nset key top left\n";
    g << "plot \\\n";
    std::size_t i = 0;
    for (const auto& [reg, m, los] : curves) {
      const char* name = to_string(static_cast<Regime>(reg));
      // CSV line columns: dist_m,regime,M,los,seed,peb_m,...
      const std::string filter = "$2~/" + std::string(name) + "/ && $3==" + std::to_string(m) +
                                 " && $4==" + (los ? "1" : "0") +
                                 (has_median ? " && $5~/median/" : "");
      g << "  \"< awk -F, '" << filter << "' " << csv_path << "\" using 1:6 with linespoints title '"
        << name << " M=" << m << (los ? " LoS" : " NLoS") << "'"
        << (++i < curves.size() ? ", \\\n" : "\n");
    }
  } else {
    g << "set view map\nset size ratio -1\nset xlabel 'x (m)'\nset ylabel 'y (m)'\n";
    g << "set cblabel 'PEB (dB)'\n";
    std::set<int> regimes;
    for (const auto& c : curves) regimes.insert(std::get<0>(c));
    for (int reg : regimes) {
      const char* name = to_string(static_cast<Regime>(reg));
      g << "set title '" << name << "'\n";
      g << "splot \"< awk -F, '$4~/" << name << "/ && " << seed_test << " && $9!~/inf|nan/' "
        << csv_path << "\" using 1:2:9 with points pointtype 5 palette notitle\n";
      g << "pause -1\n";
    }
  }
  return g.str();
}

}  // namespace risloc
