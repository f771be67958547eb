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

#pragma once

// Sweep configuration files.
//
// Line-oriented INI dialect:
//
//   # comment (also ';')
//   [scenario]            single section
//   bs_m = [5, 5, 0]
//   [[ris]]               repeated section, one block per RIS
//   center_m = [0, 0, 0]
//
// Values are numbers, bare words, bracketed lists, or integer ranges a..b.
// Every physical quantity carries its unit in the key name.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "risloc/error.hpp"
#include "risloc/signal_model.hpp"

namespace risloc {

/// Config problems; what() lists every violation, one per line.
class ConfigError : public ValidationError {
 public:
  explicit ConfigError(std::vector<std::string> messages);
  const std::vector<std::string>& messages() const { return messages_; }

 private:
  std::vector<std::string> messages_;
};

enum class SweepKind { Line, Grid };

struct LineSpec {
  Vec3 origin = Vec3::Zero();
  Vec3 direction = Vec3::UnitY();  // normalized on load
  std::vector<double> distances;   // meters, > 0
};

struct GridSpec {
  double x_min = 0.0, x_max = 0.0;
  double y_min = 0.0, y_max = 0.0;
  double resolution = 0.1;  // meters
  double z = 0.0;

  std::vector<double> xs() const;
  std::vector<double> ys() const;
};

struct SweepConfig {
  // UE and seed of the template are overwritten per sweep point.
  Scenario scenario;
  SweepKind kind = SweepKind::Line;
  LineSpec line;
  GridSpec grid;
  std::vector<Regime> regimes{Regime::NearField, Regime::FarField};
  // Square RIS sizes; each entry overrides elements_u = elements_v of every RIS.
  // Empty keeps the sizes given in the [[ris]] blocks.
  std::vector<int> elements_per_side;
  std::vector<LosMode> los_modes{LosMode::Auto};
  std::vector<std::uint64_t> seeds;
  std::string output;  // empty = stdout
  unsigned threads = 0;  // 0 = hardware concurrency
  double singularity_threshold = 1e-12;
};

/// Parses config text; `source` only labels diagnostics.
SweepConfig parse_config(std::string_view text, std::string_view source = "<config>");

SweepConfig load_config(const std::filesystem::path& path);

/// Built-in configs: "paper-fig3", "paper-fig4", "paper-fig5".
std::optional<std::string_view> preset_text(std::string_view name);
std::vector<std::string> preset_names();
SweepConfig load_preset(std::string_view name);

double dbm_to_watts(double dbm);

}  // namespace risloc
