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

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "risloc/channel_fim.hpp"

namespace risloc::detail {

// Link model carrying only BS and RIS geometry, for Jacobians.
LinkModel geometry_link(const Scenario& s);

// Materialized derivative columns of the joint layout: optionally the three
// position columns first, then the requested (kind, path) columns. Columns
// absent from the layout are returned as zeros.
Eigen::MatrixXcd columns_for(const Scenario& scenario, const ProfileSet& profiles,
                             const PathGains& gains, Regime regime, std::size_t t,
                             const std::vector<std::pair<ParamKind, std::size_t>>& wanted,
                             bool positions);

}  // namespace risloc::detail
