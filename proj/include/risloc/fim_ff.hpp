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

// Far-field FIM: channel parameters [tau_1, tau_0, psi_az, psi_el, alpha_1,
// alpha_0] (5 x 5 without the direct path). The angle derivatives follow from
// the linear-phase RIS response; the angle rows of the Jacobian are the
// spherical-coordinate gradients of the AoD with respect to the UE position.

#include <cstddef>

#include <Eigen/Core>

#include "risloc/channel_fim.hpp"
#include "risloc/signal_model.hpp"

namespace risloc {

/// [d mu_t / d psi_az, d mu_t / d psi_el] for RIS 1..K stacked (N x 2K).
Eigen::MatrixXcd dmu_dangles(const Scenario& scenario, const ProfileSet& profiles,
                             const PathGains& gains, std::size_t t);

ChannelFim assemble_channel_fim_ff(const Scenario& scenario, const ProfileSet& profiles,
                                   const PathGains& gains, const FimOptions& options = {});

/// 8 x 8 (LoS) or 5 x 6 (NLoS) for a single RIS. Throws GeometryError at
/// the elevation poles.
Eigen::MatrixXd jacobian_ff(const Scenario& scenario);

PositionalFim positional_fim_ff(const Scenario& scenario, const ProfileSet& profiles,
                                const PathGains& gains, const FimOptions& options = {});

}  // namespace risloc
