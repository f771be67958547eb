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

// Shared machinery behind the near- and far-field FIM builders.
//
// Every derivative of mu_t with respect to a channel parameter is a sum of
// terms  c * s_n * n^q * exp(-j 2 pi n delta_f tau_path)  with q in {0, 1}.
// A column is stored as that list of terms; it can be materialized over the
// N subcarriers (the direct reference path) or folded into closed subcarrier
// moments sum_n n^q exp(-j theta n) shared by all transmissions.

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "risloc/signal_model.hpp"

namespace risloc {

enum class ParamKind { Position, Delay, Azimuth, Elevation, GainRe, GainIm };

struct ParamSpec {
  ParamKind kind = ParamKind::Position;
  std::size_t path = 0;  // 0 = direct path, k = RIS k
  int axis = 0;          // x/y/z for Position
  std::string label;
};

/// Ordered channel parameter vector for a regime and a set of modeled paths.
///   NF: [p, tau_1..tau_K, tau_0, alpha_1 (re, im) .. alpha_K, alpha_0]
///   FF: [tau_1..tau_K, tau_0, (psi_az, psi_el)_1..K, alpha_1 .. alpha_K, alpha_0]
/// Absent paths contribute no parameters.
struct ChannelLayout {
  Regime regime = Regime::NearField;
  std::vector<bool> paths;  // paths[0] = direct path, paths[k] = RIS k
  std::vector<ParamSpec> params;

  static ChannelLayout make(Regime regime, std::vector<bool> paths);
  static ChannelLayout joint(Regime regime, std::size_t n_ris, bool los);

  std::size_t size() const { return params.size(); }
  std::size_t ris_count() const { return paths.empty() ? 0 : paths.size() - 1; }
  bool has_path(std::size_t k) const { return k < paths.size() && paths[k]; }
  std::vector<std::string> labels() const;
  /// Index of a parameter or -1.
  int find(ParamKind kind, std::size_t path, int axis = 0) const;
  /// Positional labels [p_x, p_y, p_z, clock_bias, gains in channel order].
  std::vector<std::string> positional_labels() const;
};

struct ColumnTerm {
  std::size_t path = 0;
  int power = 0;  // exponent of the subcarrier index n
  cplx coeff{};
};
using DerivativeColumn = std::vector<ColumnTerm>;

enum class SubcarrierSum { Direct, Moments };

struct FimOptions {
  // Moments requires the constant pilot; a custom pilot falls back to Direct.
  SubcarrierSum sums = SubcarrierSum::Moments;
};

struct ChannelFim {
  Eigen::MatrixXd matrix;
  std::vector<std::string> param_labels;
  ChannelLayout layout;
};

struct PositionalFim {
  Eigen::MatrixXd matrix;  // [p, clock_bias, gains]
  std::vector<std::string> param_labels;
};

/// Per-RIS data for one (state, regime) that every transmission reuses:
/// cascaded response b and the real weights that turn sum b w into its
/// parameter derivatives (d/dtheta sum_m b_m w_m = scale * sum_m b_m w_m g_m).
struct ApertureDerivatives {
  Eigen::VectorXcd b;
  Eigen::MatrixXd weights;  // M x n_weights, column-major
  cplx scale{};
};

ApertureDerivatives aperture_derivatives(const LinkModel& link, const ChannelState& state,
                                         Regime regime, std::size_t k);

/// Derivative columns of mu_t for every parameter of `layout`, in order.
std::vector<DerivativeColumn> derivative_columns(const LinkModel& link, const ChannelState& state,
                                                 const ChannelLayout& layout, std::size_t t,
                                                 const std::vector<ApertureDerivatives>& aperture);

std::vector<ApertureDerivatives> aperture_derivatives(const LinkModel& link,
                                                      const ChannelState& state,
                                                      const ChannelLayout& layout);

/// N x P matrix of the given columns.
Eigen::MatrixXcd materialize(const LinkModel& link, const ChannelState& state,
                             const std::vector<DerivativeColumn>& columns);

/// (2 / N0) sum_t Re{ dmu^H dmu } over the layout's parameters.
ChannelFim channel_fim(const LinkModel& link, const ChannelState& state,
                       const ChannelLayout& layout, const FimOptions& options = {});

/// d zeta_ch / d zeta_po at the true geometry (state.ue).
Eigen::MatrixXd positional_jacobian(const LinkModel& link, const ChannelState& state,
                                    const ChannelLayout& layout);

PositionalFim to_positional(const ChannelFim& fim, const Eigen::MatrixXd& jacobian);

PositionalFim positional_fim(const LinkModel& link, const ChannelState& state,
                             const ChannelLayout& layout, const FimOptions& options = {});

/// Gradients of (azimuth, elevation) of target - origin with respect to
/// target. Throws GeometryError at the elevation poles.
Eigen::Matrix<double, 2, 3> aod_gradient(const Vec3& origin, const Vec3& target);

}  // namespace risloc
