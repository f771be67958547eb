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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "risloc/bounds.hpp"
#include "risloc/config.hpp"

namespace risloc {

struct SweepRow {
  std::size_t point = 0;  // index into the line distances or the grid cells
  Vec3 position = Vec3::Zero();
  double distance = 0.0;  // line sweeps only
  Regime regime = Regime::NearField;
  std::size_t elements = 0;  // RIS element count M
  bool los = false;
  std::optional<std::uint64_t> seed;  // empty on the per-point median row
  // NaN when the point is not a valid UE position (on the BS or a RIS).
  double peb = kInfinity;
  double seb = kInfinity;
  bool identifiable = false;
};

struct SweepTable {
  SweepKind kind = SweepKind::Line;
  std::vector<SweepRow> rows;
};

/// Rows ordered by (point, regime, M, LoS mode, seed) with the median row of
/// each group after its seeds. Output never depends on the thread count.
/// Profiles and gain phases depend on the seed only, so every point of a
/// sweep sees the same random draws.
SweepTable run_line_sweep(const SweepConfig& config, unsigned threads = 0);
SweepTable run_grid_sweep(const SweepConfig& config, unsigned threads = 0);
SweepTable run_sweep(const SweepConfig& config, unsigned threads = 0);

/// 10 log10(PEB / 1 m).
double peb_db(double peb_m);

std::string to_csv(const SweepTable& table);

/// gnuplot script that plots the median rows of `csv_path`.
std::string gnuplot_script(const SweepTable& table, const std::string& csv_path);

}  // namespace risloc
