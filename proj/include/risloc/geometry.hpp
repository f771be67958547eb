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
#include <span>
#include <vector>

#include <Eigen/Core>

namespace risloc {

using Vec3 = Eigen::Vector3d;

/// Planar RIS: a centered elements_u x elements_v grid spanned by two
/// orthonormal in-plane axes. Element m = i * elements_v + j (row-major).
struct RisDescriptor {
  Vec3 center = Vec3::Zero();
  Vec3 axis_u = Vec3::UnitX();
  Vec3 axis_v = Vec3::UnitZ();
  int elements_u = 1;
  int elements_v = 1;
  double spacing = 0.005;  // meters

  std::size_t element_count() const {
    return static_cast<std::size_t>(elements_u) * static_cast<std::size_t>(elements_v);
  }
  Vec3 normal() const { return axis_u.cross(axis_v); }

  // Throws ValidationError on non-orthonormal axes, empty grid or
  // non-positive spacing.
  void validate() const;
};

/// Wall segment; blockage is evaluated on its projection onto z = 0.
struct Obstacle {
  Vec3 endpoint_a = Vec3::Zero();
  Vec3 endpoint_b = Vec3::Zero();
};

/// Angle of departure in the global frame, radians.
/// elevation in [0, pi], azimuth in (-pi, pi]; azimuth is 0 at the poles.
struct AodAngles {
  double azimuth = 0.0;
  double elevation = 0.0;
};

std::vector<Vec3> element_positions(const RisDescriptor& ris);

/// Element offsets q_m = p_m - center as an M x 3 matrix (row m = element m).
Eigen::MatrixX3d element_offsets(const RisDescriptor& ris);

/// Half-diagonal of the element grid: bound on every |q_m|.
double max_element_offset(const RisDescriptor& ris);

/// Unit direction [sin(el) cos(az), sin(el) sin(az), cos(el)].
Vec3 aod_direction(const AodAngles& angles);

/// AoD from the RIS center towards target. Throws GeometryError
/// ("degenerate direction") when target coincides with the center.
AodAngles aod_angles(const RisDescriptor& ris, const Vec3& target);
AodAngles aod_angles(const Vec3& origin, const Vec3& target);

/// True iff the z = 0 projection of segment bs-ue intersects any obstacle
/// segment. Touching an endpoint counts as blocked.
bool los_blocked(const Vec3& bs, const Vec3& ue, std::span<const Obstacle> obstacles);

}  // namespace risloc
