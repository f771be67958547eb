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

#include "risloc/bounds.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "risloc/error.hpp"

namespace risloc {

namespace {

// Pseudoinverse of a symmetric PSD block through its eigendecomposition.
Eigen::MatrixXd symmetric_pinv(const Eigen::MatrixXd& c, double threshold, bool& singular) {
  singular = false;
  if (c.size() == 0) return c;
  const Eigen::VectorXd d = c.diagonal().cwiseMax(0.0).cwiseSqrt();
  Eigen::VectorXd dinv(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) dinv[i] = d[i] > 0.0 ? 1.0 / d[i] : 0.0;
  const Eigen::MatrixXd scaled = dinv.asDiagonal() * c * dinv.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(scaled);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double cutoff = threshold * std::max(ev.maxCoeff(), 0.0);
  Eigen::VectorXd inv_ev(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] > cutoff && ev[i] > 0.0) {
      inv_ev[i] = 1.0 / ev[i];
    } else {
      inv_ev[i] = 0.0;
      singular = true;
    }
  }
  if ((d.array() == 0.0).any()) singular = true;
  const Eigen::MatrixXd scaled_inv = es.eigenvectors() * inv_ev.asDiagonal() * es.eigenvectors().transpose();
  return dinv.asDiagonal() * scaled_inv * dinv.asDiagonal();
}

std::vector<bool> only_path(std::size_t n_paths, std::size_t k) {
  std::vector<bool> p(n_paths, false);
  p[k] = true;
  return p;
}

}  // namespace

Efim efim_position_clock(const PositionalFim& fim) {
  const Eigen::MatrixXd& F = fim.matrix;
  if (F.rows() < 4 || F.rows() != F.cols()) throw NumericalError("positional FIM must be square with at least 4 parameters");
  const Eigen::Index g = F.rows() - 4;
  Efim out;
  const Eigen::Matrix4d A = F.topLeftCorner<4, 4>();
  if (g == 0) {
    out.matrix = A;
    return out;
  }
  const Eigen::MatrixXd B = F.topRightCorner(4, g);
  const Eigen::MatrixXd C = F.bottomRightCorner(g, g);
  bool singular = false;
  const Eigen::MatrixXd Cinv = symmetric_pinv(C, kDefaultSingularityThreshold, singular);
  out.gain_block_singular = singular;
  out.matrix = A - B * Cinv * B.transpose();
  out.matrix = 0.5 * (out.matrix + out.matrix.transpose()).eval();
  return out;
}

EfimAnalysis analyze_efim(const Eigen::Matrix4d& efim, double threshold) {
  EfimAnalysis out;
  const Eigen::Vector4d diag = efim.diagonal();
  if (!efim.allFinite() || (diag.array() <= 0.0).any()) {
    out.rank = static_cast<int>((diag.array() > 0.0).count());
    return out;
  }
  const Eigen::Vector4d dinv = diag.cwiseSqrt().cwiseInverse();
  const Eigen::Matrix4d scaled = dinv.asDiagonal() * efim * dinv.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(scaled);
  const Eigen::Vector4d ev = es.eigenvalues();  // ascending
  const double top = ev[3];
  out.rank = static_cast<int>((ev.array() > threshold * top).count());
  out.condition_number = ev[0] > 0.0 ? top / ev[0] : kInfinity;
  out.singular = !(top > 0.0) || ev[0] <= threshold * top;
  if (out.singular) return out;
  const Eigen::Matrix4d scaled_inv =
      es.eigenvectors() * ev.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
  out.inverse = dinv.asDiagonal() * scaled_inv * dinv.asDiagonal();
  return out;
}

double peb(const Eigen::Matrix4d& efim, double threshold) {
  const EfimAnalysis a = analyze_efim(efim, threshold);
  if (a.singular) return kInfinity;
  return std::sqrt(a.inverse.topLeftCorner<3, 3>().trace());
}

double seb(const Eigen::Matrix4d& efim, double threshold) {
  const EfimAnalysis a = analyze_efim(efim, threshold);
  if (a.singular) return kInfinity;
  return std::sqrt(a.inverse(3, 3));
}

Efim fuse_multi_ris(std::span<const Efim> per_path) {
  if (per_path.empty()) throw NumericalError("nothing to fuse");
  Efim out;
  out.labels = per_path.front().labels;
  for (const Efim& e : per_path) {
    if (e.labels != out.labels) throw NumericalError("EFIM parameter labels do not match");
    out.matrix += e.matrix;
    out.gain_block_singular = out.gain_block_singular || e.gain_block_singular;
  }
  return out;
}

bool expected_identifiable(Regime regime, std::size_t n_ris, bool los_present) {
  if (n_ris == 0) return false;
  if (los_present) return true;
  return regime == Regime::NearField || n_ris >= 2;
}

BoundReport bound_report(const Efim& efim, Regime regime, bool los_present, std::size_t n_ris,
                         double threshold) {
  const EfimAnalysis a = analyze_efim(efim.matrix, threshold);
  BoundReport r;
  r.regime = regime;
  r.los_present = los_present;
  r.rank = a.rank;
  r.condition_number = a.condition_number;
  r.identifiable = !a.singular;
  r.expected_identifiable = expected_identifiable(regime, n_ris, los_present);
  r.gain_block_singular = efim.gain_block_singular;
  if (!a.singular) {
    r.peb = std::sqrt(a.inverse.topLeftCorner<3, 3>().trace());
    r.seb = std::sqrt(a.inverse(3, 3));
  }
  return r;
}

Efim compute_efim(const LinkModel& link, const ChannelState& state, Regime regime,
                  const BoundOptions& options) {
  const std::size_t K = link.ris.size();
  Fusion mode = options.fusion;
  if (mode == Fusion::Auto) mode = K <= 1 ? Fusion::Joint : Fusion::PerPath;
  if (mode == Fusion::Joint) {
    const ChannelLayout layout = ChannelLayout::joint(regime, K, state.los);
    return efim_position_clock(positional_fim(link, state, layout, options.fim));
  }
  std::vector<Efim> parts;
  for (std::size_t k = state.los ? 0 : 1; k <= K; ++k) {
    const ChannelLayout layout = ChannelLayout::make(regime, only_path(K + 1, k));
    parts.push_back(efim_position_clock(positional_fim(link, state, layout, options.fim)));
  }
  if (parts.empty()) return Efim{};
  return fuse_multi_ris(parts);
}

BoundReport evaluate_bounds(const LinkModel& link, const ChannelState& state, Regime regime,
                            const BoundOptions& options) {
  return bound_report(compute_efim(link, state, regime, options), regime, state.los,
                      link.ris.size(), options.singularity_threshold);
}

BoundReport identifiability_report(const Scenario& scenario, Regime regime,
                                   const BoundOptions& options) {
  scenario.validate();
  const ProfileSet profiles = random_profiles(scenario);
  const PathGains gains = friis_gains(scenario);
  const LinkModel link(scenario, profiles);
  return evaluate_bounds(link, channel_state(scenario, gains), regime, options);
}

FusionComparison compare_fusion(const LinkModel& link, const ChannelState& state, Regime regime,
                                const BoundOptions& options) {
  BoundOptions joint = options;
  joint.fusion = Fusion::Joint;
  BoundOptions additive = options;
  additive.fusion = Fusion::PerPath;
  FusionComparison out;
  out.joint_peb = peb(compute_efim(link, state, regime, joint).matrix, options.singularity_threshold);
  out.additive_peb = peb(compute_efim(link, state, regime, additive).matrix, options.singularity_threshold);
  if (std::isfinite(out.joint_peb) && std::isfinite(out.additive_peb))
    out.relative_gap = std::abs(out.additive_peb - out.joint_peb) / out.joint_peb;
  else
    out.relative_gap = std::isinf(out.joint_peb) == std::isinf(out.additive_peb) ? 0.0 : kInfinity;
  return out;
}

}  // namespace risloc
