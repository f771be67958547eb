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

#include <array>
#include <limits>
#include <span>
#include <string>

#include <Eigen/Core>

#include "risloc/channel_fim.hpp"
#include "risloc/signal_model.hpp"

namespace risloc {

inline constexpr double kDefaultSingularityThreshold = 1e-12;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Equivalent FIM over (p, clock_bias) after eliminating the channel gains.
struct Efim {
  Eigen::Matrix4d matrix = Eigen::Matrix4d::Zero();
  std::array<std::string, 4> labels{"p_x", "p_y", "p_z", "clock_bias"};
  bool gain_block_singular = false;  // pseudoinverse was used
};

/// Schur complement A - B C^+ B^T of the positional FIM, A being the
/// (p, clock_bias) block and C the gain block.
Efim efim_position_clock(const PositionalFim& fim);

/// Spectral analysis of a 4 x 4 EFIM. The cutoff is applied to the
/// symmetrically equilibrated matrix D^-1/2 F D^-1/2 (D = diag F), which makes
/// it independent of the mixed m^-2 / s^-2 units.
struct EfimAnalysis {
  bool singular = true;
  int rank = 0;
  double condition_number = kInfinity;
  Eigen::Matrix4d inverse = Eigen::Matrix4d::Constant(kInfinity);
};

EfimAnalysis analyze_efim(const Eigen::Matrix4d& efim,
                          double threshold = kDefaultSingularityThreshold);

/// sqrt(trace of the position block of the EFIM inverse); +inf if singular.
double peb(const Eigen::Matrix4d& efim, double threshold = kDefaultSingularityThreshold);

/// sqrt of the clock-bias entry of the EFIM inverse; +inf if singular.
double seb(const Eigen::Matrix4d& efim, double threshold = kDefaultSingularityThreshold);

/// Sum of per-path EFIMs. Throws NumericalError on label mismatch or an
/// empty list.
Efim fuse_multi_ris(std::span<const Efim> per_path);

enum class Fusion {
  Auto,     // joint model up to one RIS, per-path sums beyond
  Joint,    // one FIM over every path
  PerPath,  // direct path and each RIS separately, EFIMs summed
};

struct BoundOptions {
  double singularity_threshold = kDefaultSingularityThreshold;
  Fusion fusion = Fusion::Auto;
  FimOptions fim;
};

struct BoundReport {
  double peb = kInfinity;  // meters
  double seb = kInfinity;  // seconds
  int rank = 0;
  double condition_number = kInfinity;
  Regime regime = Regime::NearField;
  bool los_present = false;
  bool identifiable = false;
  bool expected_identifiable = false;  // rule-based prediction
  bool gain_block_singular = false;
};

BoundReport bound_report(const Efim& efim, Regime regime, bool los_present,
                         std::size_t n_ris, double threshold = kDefaultSingularityThreshold);

/// Rule-based identifiability: no RIS -> never; direct path plus RIS ->
/// always; RIS only -> NF always, FF with at least two RIS.
bool expected_identifiable(Regime regime, std::size_t n_ris, bool los_present);

/// EFIM at an explicit link model and channel state.
Efim compute_efim(const LinkModel& link, const ChannelState& state, Regime regime,
                  const BoundOptions& options = {});

BoundReport evaluate_bounds(const LinkModel& link, const ChannelState& state, Regime regime,
                            const BoundOptions& options = {});

/// Full pipeline from a scenario: random profiles and Friis gains drawn
/// from scenario.seed.
BoundReport identifiability_report(const Scenario& scenario, Regime regime,
                                   const BoundOptions& options = {});

/// Joint versus per-path PEB for the same state. Equal when the paths are
/// mutually orthogonal over the transmissions.
struct FusionComparison {
  double joint_peb = kInfinity;
  double additive_peb = kInfinity;
  double relative_gap = 0.0;
};

FusionComparison compare_fusion(const LinkModel& link, const ChannelState& state, Regime regime,
                                const BoundOptions& options = {});

}  // namespace risloc
