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

// Near-field FIM: channel parameters [p, tau_1, tau_0, alpha_1, alpha_0]
// (6 x 6 without the direct path), mapped to [p, clock_bias, gains].
// With several RIS in the scenario every RIS path is modeled jointly.

#include <cstddef>

#include <Eigen/Core>

#include "risloc/channel_fim.hpp"
#include "risloc/signal_model.hpp"

namespace risloc {

/// d mu_t / d p through the RIS wavefront curvature (N x 3).
Eigen::MatrixXcd dmu_dp(const Scenario& scenario, const ProfileSet& profiles,
                        const PathGains& gains, std::size_t t);

/// d mu_t / d tau_k (N). Zero when path k carries no energy at t.
Eigen::VectorXcd dmu_dtau(const Scenario& scenario, const ProfileSet& profiles,
                          const PathGains& gains, std::size_t t, std::size_t k,
                          Regime regime = Regime::NearField);

/// [d mu_t / d alpha_k_re, d mu_t / d alpha_k_im] (N x 2).
Eigen::MatrixXcd dmu_dalpha(const Scenario& scenario, const ProfileSet& profiles, std::size_t t,
                            std::size_t k, Regime regime = Regime::NearField);

ChannelFim assemble_channel_fim_nf(const Scenario& scenario, const ProfileSet& profiles,
                                   const PathGains& gains, const FimOptions& options = {});

/// 9 x 8 (LoS) or 6 x 6 (NLoS) for a single RIS.
Eigen::MatrixXd jacobian_nf(const Scenario& scenario);

PositionalFim positional_fim_nf(const Scenario& scenario, const ProfileSet& profiles,
                                const PathGains& gains, const FimOptions& options = {});

}  // namespace risloc
