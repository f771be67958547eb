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

#include "risloc/fim_ff.hpp"

#include "fim_detail.hpp"

namespace risloc {


Eigen::MatrixXcd dmu_dangles(const Scenario& scenario, const ProfileSet& profiles,
                             const PathGains& gains, std::size_t t) {
  std::vector<std::pair<ParamKind, std::size_t>> wanted;
  for (std::size_t k = 1; k <= scenario.ris_list.size(); ++k) {
    wanted.emplace_back(ParamKind::Azimuth, k);
    wanted.emplace_back(ParamKind::Elevation, k);
  }
  return detail::columns_for(scenario, profiles, gains, Regime::FarField, t, wanted, false);
}

ChannelFim assemble_channel_fim_ff(const Scenario& scenario, const ProfileSet& profiles,
                                   const PathGains& gains, const FimOptions& options) {
  const LinkModel link(scenario, profiles);
  const ChannelState state = channel_state(scenario, gains);
  return channel_fim(link, state,
                     ChannelLayout::joint(Regime::FarField, scenario.ris_list.size(), gains.los_present),
                     options);
}

Eigen::MatrixXd jacobian_ff(const Scenario& scenario) {
  const LinkModel link = detail::geometry_link(scenario);
  ChannelState state;
  state.ue = scenario.ue;
  return positional_jacobian(
      link, state, ChannelLayout::joint(Regime::FarField, scenario.ris_list.size(), scenario.los_present()));
}

PositionalFim positional_fim_ff(const Scenario& scenario, const ProfileSet& profiles,
                                const PathGains& gains, const FimOptions& options) {
  const LinkModel link(scenario, profiles);
  const ChannelState state = channel_state(scenario, gains);
  return positional_fim(
      link, state, ChannelLayout::joint(Regime::FarField, scenario.ris_list.size(), gains.los_present),
      options);
}

}  // namespace risloc
