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

#include "risloc/channel_fim.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "risloc/error.hpp"
#include "risloc/simd/kernels.hpp"

namespace risloc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr cplx kJ{0.0, 1.0};
const char* const kAxisNames[3] = {"p_x", "p_y", "p_z"};

std::string path_suffix(std::size_t path) { return "_" + std::to_string(path); }

bool is_gain(ParamKind k) { return k == ParamKind::GainRe || k == ParamKind::GainIm; }

// sum_{n<N} n^q for q = 0, 1, 2.
simd::SubcarrierMoments zero_offset_moments(std::size_t n) {
  const double N = static_cast<double>(n);
  return {cplx(N, 0.0), cplx(N * (N - 1.0) / 2.0, 0.0),
          cplx((N - 1.0) * N * (2.0 * N - 1.0) / 6.0, 0.0)};
}

cplx moment(const simd::SubcarrierMoments& m, int q) {
  switch (q) {
    case 0: return m.s0;
    case 1: return m.s1;
    default: return m.s2;
  }
}

Vec3 unit(const Vec3& v) {
  const double n = v.norm();
  if (!(n > 0.0)) throw GeometryError("degenerate geometry: coincident points");
  return v / n;
}

}  // namespace

ChannelLayout ChannelLayout::make(Regime regime, std::vector<bool> paths) {
  if (paths.empty()) paths.push_back(false);
  ChannelLayout l;
  l.regime = regime;
  l.paths = std::move(paths);
  const std::size_t K = l.paths.size() - 1;
  bool any_ris = false;
  for (std::size_t k = 1; k <= K; ++k) any_ris = any_ris || l.paths[k];

  auto add = [&](ParamKind kind, std::size_t path, int axis, std::string label) {
    l.params.push_back({kind, path, axis, std::move(label)});
  };
  if (regime == Regime::NearField && any_ris) {
    for (int a = 0; a < 3; ++a) add(ParamKind::Position, 0, a, kAxisNames[a]);
  }
  for (std::size_t k = 1; k <= K; ++k)
    if (l.paths[k]) add(ParamKind::Delay, k, 0, "tau" + path_suffix(k));
  if (l.paths[0]) add(ParamKind::Delay, 0, 0, "tau_0");
  if (regime == Regime::FarField) {
    for (std::size_t k = 1; k <= K; ++k) {
      if (!l.paths[k]) continue;
      add(ParamKind::Azimuth, k, 0, "psi_az" + path_suffix(k));
      add(ParamKind::Elevation, k, 0, "psi_el" + path_suffix(k));
    }
  }
  for (std::size_t k = 1; k <= K; ++k) {
    if (!l.paths[k]) continue;
    add(ParamKind::GainRe, k, 0, "alpha" + path_suffix(k) + "_re");
    add(ParamKind::GainIm, k, 0, "alpha" + path_suffix(k) + "_im");
  }
  if (l.paths[0]) {
    add(ParamKind::GainRe, 0, 0, "alpha_0_re");
    add(ParamKind::GainIm, 0, 0, "alpha_0_im");
  }
  return l;
}

ChannelLayout ChannelLayout::joint(Regime regime, std::size_t n_ris, bool los) {
  std::vector<bool> paths(n_ris + 1, true);
  paths[0] = los;
  return make(regime, std::move(paths));
}

std::vector<std::string> ChannelLayout::labels() const {
  std::vector<std::string> out;
  out.reserve(params.size());
  for (const auto& p : params) out.push_back(p.label);
  return out;
}

int ChannelLayout::find(ParamKind kind, std::size_t path, int axis) const {
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto& p = params[i];
    if (p.kind != kind) continue;
    if (kind == ParamKind::Position ? p.axis == axis : p.path == path) return static_cast<int>(i);
  }
  return -1;
}

std::vector<std::string> ChannelLayout::positional_labels() const {
  std::vector<std::string> out{"p_x", "p_y", "p_z", "clock_bias"};
  for (const auto& p : params)
    if (is_gain(p.kind)) out.push_back(p.label);
  return out;
}

ApertureDerivatives aperture_derivatives(const LinkModel& link, const ChannelState& state,
                                         Regime regime, std::size_t k) {
  const RisLink& r = link.ris.at(k);
  const Eigen::Index M = r.offsets.rows();
  ApertureDerivatives out;
  out.b = cascaded_response(link, state, regime, k);
  const double kappa = kTwoPi / link.wavelength;
  if (regime == Regime::NearField) {
    // d a_m / dp = -j kappa a_m (e_m - e_k)
    out.scale = -kJ * kappa;
    out.weights.resize(M, 3);
    const Vec3 rel = state.ue - r.descriptor.center;
    const Vec3 ek = unit(rel);
    for (Eigen::Index m = 0; m < M; ++m) {
      const Vec3 rm = rel - r.offsets.row(m).transpose();
      const double dm = rm.norm();
      if (dm == 0.0) throw GeometryError("singular geometry: UE coincides with a RIS element");
      out.weights.row(m) = (rm / dm - ek).transpose();
    }
  } else {
    // d a_m / dpsi = -j (q_m . dk/dpsi) a_m
    out.scale = -kJ;
    const AodAngles& ang = state.aod.at(k);
    const double sa = std::sin(ang.azimuth), ca = std::cos(ang.azimuth);
    const double se = std::sin(ang.elevation), ce = std::cos(ang.elevation);
    const Vec3 dk_az = -kappa * Vec3(-se * sa, se * ca, 0.0);
    const Vec3 dk_el = -kappa * Vec3(ce * ca, ce * sa, -se);
    out.weights.resize(M, 2);
    out.weights.col(0) = r.offsets * dk_az;
    out.weights.col(1) = r.offsets * dk_el;
  }
  return out;
}

std::vector<ApertureDerivatives> aperture_derivatives(const LinkModel& link,
                                                      const ChannelState& state,
                                                      const ChannelLayout& layout) {
  std::vector<ApertureDerivatives> out(link.ris.size());
  for (std::size_t k = 0; k < link.ris.size(); ++k)
    if (layout.has_path(k + 1)) out[k] = aperture_derivatives(link, state, layout.regime, k);
  return out;
}

std::vector<DerivativeColumn> derivative_columns(const LinkModel& link, const ChannelState& state,
                                                 const ChannelLayout& layout, std::size_t t,
                                                 const std::vector<ApertureDerivatives>& aperture) {
  const std::size_t K = link.ris.size();
  if (layout.ris_count() != K) throw NumericalError("layout does not match the link model");
  // Per-path projections at transmission t.
  std::vector<cplx> proj(K + 1, cplx(0.0, 0.0));
  std::vector<std::array<cplx, simd::kMaxWeights>> dproj(K + 1);
  std::vector<bool> live(K + 1, false);
  proj[0] = cplx(1.0, 0.0);
  live[0] = layout.has_path(0);
  for (std::size_t k = 1; k <= K; ++k) {
    const RisLink& r = link.ris[k - 1];
    if (!layout.has_path(k) || !r.schedule.active.at(t)) continue;
    const ApertureDerivatives& ad = aperture[k - 1];
    const auto m = static_cast<std::size_t>(ad.b.size());
    const simd::WeightedSums s = simd::weighted_dot(
        ad.b.data(), r.profile_columns.col(static_cast<Eigen::Index>(t)).data(),
        ad.weights.data(), static_cast<std::size_t>(ad.weights.cols()), m);
    proj[k] = s.plain;
    for (Eigen::Index j = 0; j < ad.weights.cols(); ++j) dproj[k][static_cast<std::size_t>(j)] = ad.scale * s.weighted[static_cast<std::size_t>(j)];
    live[k] = true;
  }
  const cplx delay_factor = -kJ * kTwoPi * link.waveform.subcarrier_spacing;

  std::vector<DerivativeColumn> cols;
  cols.reserve(layout.size());
  for (const ParamSpec& p : layout.params) {
    DerivativeColumn col;
    switch (p.kind) {
      case ParamKind::Position:
        for (std::size_t k = 1; k <= K; ++k)
          if (live[k]) col.push_back({k, 0, state.gains[k] * dproj[k][static_cast<std::size_t>(p.axis)]});
        break;
      case ParamKind::Delay:
        if (live[p.path]) col.push_back({p.path, 1, delay_factor * state.gains[p.path] * proj[p.path]});
        break;
      case ParamKind::Azimuth:
        if (live[p.path]) col.push_back({p.path, 0, state.gains[p.path] * dproj[p.path][0]});
        break;
      case ParamKind::Elevation:
        if (live[p.path]) col.push_back({p.path, 0, state.gains[p.path] * dproj[p.path][1]});
        break;
      case ParamKind::GainRe:
        if (live[p.path]) col.push_back({p.path, 0, proj[p.path]});
        break;
      case ParamKind::GainIm:
        if (live[p.path]) col.push_back({p.path, 0, kJ * proj[p.path]});
        break;
    }
    cols.push_back(std::move(col));
  }
  return cols;
}

Eigen::MatrixXcd materialize(const LinkModel& link, const ChannelState& state,
                             const std::vector<DerivativeColumn>& columns) {
  const WaveformParams& w = link.waveform;
  const int N = w.n_subcarriers;
  const Eigen::VectorXcd s = w.pilot_vector();
  const Eigen::ArrayXd n = Eigen::ArrayXd::LinSpaced(N, 0.0, N - 1.0);
  std::vector<Eigen::VectorXcd> steer(state.delays.size());
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(N, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (const ColumnTerm& term : columns[c]) {
      auto& d = steer.at(term.path);
      if (d.size() == 0) d = s.cwiseProduct(delay_steering(state.delays[term.path], w.subcarrier_spacing, N));
      if (term.power == 0)
        D.col(static_cast<Eigen::Index>(c)) += term.coeff * d;
      else
        D.col(static_cast<Eigen::Index>(c)).array() += term.coeff * (n.pow(term.power).cast<cplx>() * d.array());
    }
  }
  return D;
}

ChannelFim channel_fim(const LinkModel& link, const ChannelState& state,
                       const ChannelLayout& layout, const FimOptions& options) {
  const WaveformParams& w = link.waveform;
  const auto P = static_cast<Eigen::Index>(layout.size());
  const std::size_t T = link.transmissions();
  const std::vector<ApertureDerivatives> aperture = aperture_derivatives(link, state, layout);
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(P, P);

  const bool use_moments = options.sums == SubcarrierSum::Moments && w.constant_pilot();
  if (!use_moments) {
    for (std::size_t t = 0; t < T; ++t) {
      const Eigen::MatrixXcd D = materialize(link, state, derivative_columns(link, state, layout, t, aperture));
      F += (D.adjoint() * D).real();
    }
  } else {
    // moments[a][b] = sum_n n^q exp(-j 2 pi delta_f n (tau_b - tau_a)).
    const std::size_t n_paths = layout.paths.size();
    const auto N = static_cast<std::size_t>(w.n_subcarriers);
    std::vector<std::vector<simd::SubcarrierMoments>> moments(
        n_paths, std::vector<simd::SubcarrierMoments>(n_paths));
    for (std::size_t a = 0; a < n_paths; ++a) {
      if (!layout.has_path(a)) continue;
      moments[a][a] = zero_offset_moments(N);
      for (std::size_t b = a + 1; b < n_paths; ++b) {
        if (!layout.has_path(b)) continue;
        const double theta = kTwoPi * w.subcarrier_spacing * (state.delays[b] - state.delays[a]);
        moments[a][b] = simd::subcarrier_moments(theta, N);
        moments[b][a] = {std::conj(moments[a][b].s0), std::conj(moments[a][b].s1),
                         std::conj(moments[a][b].s2)};
      }
    }
    for (std::size_t t = 0; t < T; ++t) {
      const auto cols = derivative_columns(link, state, layout, t, aperture);
      for (Eigen::Index i = 0; i < P; ++i) {
        for (Eigen::Index j = i; j < P; ++j) {
          double acc = 0.0;
          for (const ColumnTerm& ta : cols[static_cast<std::size_t>(i)])
            for (const ColumnTerm& tb : cols[static_cast<std::size_t>(j)])
              acc += (std::conj(ta.coeff) * tb.coeff * moment(moments[ta.path][tb.path], ta.power + tb.power)).real();
          F(i, j) += acc;
        }
      }
    }
    F = link.symbol_energy * F.selfadjointView<Eigen::Upper>().toDenseMatrix();
  }
  ChannelFim out;
  out.matrix = (2.0 / w.effective_noise_psd()) * F;
  out.matrix = 0.5 * (out.matrix + out.matrix.transpose()).eval();
  out.param_labels = layout.labels();
  out.layout = layout;
  return out;
}

Eigen::Matrix<double, 2, 3> aod_gradient(const Vec3& origin, const Vec3& target) {
  const Vec3 r = target - origin;
  const double r2 = r.squaredNorm();
  const double rho = std::hypot(r.x(), r.y());
  if (!(r2 > 0.0)) throw GeometryError("degenerate direction: target coincides with origin");
  if (rho <= 1e-12 * std::sqrt(r2))
    throw GeometryError("elevation pole: azimuth unidentifiable");
  Eigen::Matrix<double, 2, 3> g;
  g.row(0) << -r.y() / (rho * rho), r.x() / (rho * rho), 0.0;
  g.row(1) << r.x() * r.z() / (r2 * rho), r.y() * r.z() / (r2 * rho), -rho / r2;
  return g;
}

Eigen::MatrixXd positional_jacobian(const LinkModel& link, const ChannelState& state,
                                    const ChannelLayout& layout) {
  const auto rows = static_cast<Eigen::Index>(layout.size());
  Eigen::Index n_gain = 0;
  for (const auto& p : layout.params) n_gain += is_gain(p.kind);
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(rows, 4 + n_gain);
  Eigen::Index gain_col = 4;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const ParamSpec& p = layout.params[static_cast<std::size_t>(i)];
    switch (p.kind) {
      case ParamKind::Position: J(i, p.axis) = 1.0; break;
      case ParamKind::Delay: {
        const Vec3 origin = p.path == 0 ? link.bs : link.ris.at(p.path - 1).descriptor.center;
        J.block<1, 3>(i, 0) = unit(state.ue - origin).transpose() / kSpeedOfLight;
        J(i, 3) = 1.0;
        break;
      }
      case ParamKind::Azimuth:
        J.block<1, 3>(i, 0) = aod_gradient(link.ris.at(p.path - 1).descriptor.center, state.ue).row(0);
        break;
      case ParamKind::Elevation:
        J.block<1, 3>(i, 0) = aod_gradient(link.ris.at(p.path - 1).descriptor.center, state.ue).row(1);
        break;
      case ParamKind::GainRe:
      case ParamKind::GainIm: J(i, gain_col++) = 1.0; break;
    }
  }
  return J;
}

PositionalFim to_positional(const ChannelFim& fim, const Eigen::MatrixXd& jacobian) {
  if (jacobian.rows() != fim.matrix.rows())
    throw NumericalError("Jacobian rows do not match the channel FIM");
  PositionalFim out;
  out.matrix = jacobian.transpose() * fim.matrix * jacobian;
  out.matrix = 0.5 * (out.matrix + out.matrix.transpose()).eval();
  out.param_labels = fim.layout.positional_labels();
  return out;
}

PositionalFim positional_fim(const LinkModel& link, const ChannelState& state,
                             const ChannelLayout& layout, const FimOptions& options) {
  return to_positional(channel_fim(link, state, layout, options),
                       positional_jacobian(link, state, layout));
}

}  // namespace risloc
