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

#include "risloc/fim_nf.hpp"

#include <stdexcept>

#include "fim_detail.hpp"

namespace risloc {

namespace detail {

LinkModel geometry_link(const Scenario& s) {
  LinkModel link;
  link.waveform = s.waveform;
  link.bs = s.bs;
  link.wavelength = s.waveform.wavelength();
  link.symbol_energy = s.waveform.symbol_energy();
  for (const auto& r : s.ris_list) {
    RisLink rl;
    rl.descriptor = r;
    link.ris.push_back(std::move(rl));
  }
  return link;
}

Eigen::MatrixXcd columns_for(const Scenario& scenario, const ProfileSet& profiles,
                             const PathGains& gains, Regime regime, std::size_t t,
                             const std::vector<std::pair<ParamKind, std::size_t>>& wanted,
                             bool positions) {
  if (t >= static_cast<std::size_t>(scenario.waveform.n_transmissions))
    throw std::out_of_range("transmission index out of range");
  const LinkModel link(scenario, profiles);
  const ChannelState state = channel_state(scenario, gains);
  const ChannelLayout layout = ChannelLayout::joint(regime, scenario.ris_list.size(), gains.los_present);
  const auto aperture = aperture_derivatives(link, state, layout);
  const auto all = derivative_columns(link, state, layout, t, aperture);
  std::vector<DerivativeColumn> picked;
  if (positions) {
    for (int a = 0; a < 3; ++a) {
      const int idx = layout.find(ParamKind::Position, 0, a);
      picked.push_back(idx >= 0 ? all[static_cast<std::size_t>(idx)] : DerivativeColumn{});
    }
  }
  for (const auto& [kind, path] : wanted) {
    const int idx = layout.find(kind, path);
    picked.push_back(idx >= 0 ? all[static_cast<std::size_t>(idx)] : DerivativeColumn{});
  }
  return materialize(link, state, picked);
}

}  // namespace detail

Eigen::MatrixXcd dmu_dp(const Scenario& scenario, const ProfileSet& profiles,
                        const PathGains& gains, std::size_t t) {
  return detail::columns_for(scenario, profiles, gains, Regime::NearField, t, {}, true);
}

Eigen::VectorXcd dmu_dtau(const Scenario& scenario, const ProfileSet& profiles,
                          const PathGains& gains, std::size_t t, std::size_t k, Regime regime) {
  if (k > scenario.ris_list.size()) throw std::out_of_range("path index out of range");
  return detail::columns_for(scenario, profiles, gains, regime, t, {{ParamKind::Delay, k}}, false).col(0);
}

Eigen::MatrixXcd dmu_dalpha(const Scenario& scenario, const ProfileSet& profiles, std::size_t t,
                            std::size_t k, Regime regime) {
  if (k > scenario.ris_list.size()) throw std::out_of_range("path index out of range");
  // Gain derivatives do not depend on the gain values; unit gains keep every
  // path present.
  PathGains unit;
  unit.los_present = true;
  unit.alpha.assign(scenario.ris_list.size() + 1, cplx(1.0, 0.0));
  return detail::columns_for(scenario, profiles, unit, regime, t,
                             {{ParamKind::GainRe, k}, {ParamKind::GainIm, k}}, false);
}

ChannelFim assemble_channel_fim_nf(const Scenario& scenario, const ProfileSet& profiles,
                                   const PathGains& gains, const FimOptions& options) {
  const LinkModel link(scenario, profiles);
  const ChannelState state = channel_state(scenario, gains);
  return channel_fim(link, state,
                     ChannelLayout::joint(Regime::NearField, scenario.ris_list.size(), gains.los_present),
                     options);
}

Eigen::MatrixXd jacobian_nf(const Scenario& scenario) {
  const LinkModel link = detail::geometry_link(scenario);
  ChannelState state;
  state.ue = scenario.ue;
  return positional_jacobian(
      link, state, ChannelLayout::joint(Regime::NearField, scenario.ris_list.size(), scenario.los_present()));
}

PositionalFim positional_fim_nf(const Scenario& scenario, const ProfileSet& profiles,
                                const PathGains& gains, const FimOptions& options) {
  const LinkModel link(scenario, profiles);
  const ChannelState state = channel_state(scenario, gains);
  return positional_fim(
      link, state, ChannelLayout::joint(Regime::NearField, scenario.ris_list.size(), gains.los_present),
      options);
}

}  // namespace risloc
