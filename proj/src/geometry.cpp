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

#include "risloc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "risloc/error.hpp"

namespace risloc {

namespace {

constexpr double kAxisTolerance = 1e-12;

// Orientation of the triangle (a, b, c) in the xy-plane.
double orient2d(const Vec3& a, const Vec3& b, const Vec3& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

bool on_segment2d(const Vec3& a, const Vec3& b, const Vec3& c) {
  return std::min(a.x(), b.x()) <= c.x() && c.x() <= std::max(a.x(), b.x()) &&
         std::min(a.y(), b.y()) <= c.y() && c.y() <= std::max(a.y(), b.y());
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

bool segments_intersect2d(const Vec3& p1, const Vec3& p2, const Vec3& q1, const Vec3& q2) {
  const int d1 = sign(orient2d(q1, q2, p1));
  const int d2 = sign(orient2d(q1, q2, p2));
  const int d3 = sign(orient2d(p1, p2, q1));
  const int d4 = sign(orient2d(p1, p2, q2));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment2d(q1, q2, p1)) return true;
  if (d2 == 0 && on_segment2d(q1, q2, p2)) return true;
  if (d3 == 0 && on_segment2d(p1, p2, q1)) return true;
  if (d4 == 0 && on_segment2d(p1, p2, q2)) return true;
  return false;
}

}  // namespace

void RisDescriptor::validate() const {
  std::ostringstream err;
  if (!center.allFinite() || !axis_u.allFinite() || !axis_v.allFinite())
    err << " non-finite position or axis;";
  if (std::abs(axis_u.norm() - 1.0) > kAxisTolerance) err << " axis_u is not unit norm;";
  if (std::abs(axis_v.norm() - 1.0) > kAxisTolerance) err << " axis_v is not unit norm;";
  if (std::abs(axis_u.dot(axis_v)) > kAxisTolerance) err << " axes are not orthogonal;";
  if (elements_u < 1 || elements_v < 1) err << " element grid must be at least 1x1;";
  if (!(spacing > 0.0) || !std::isfinite(spacing)) err << " spacing must be positive;";
  const std::string msg = err.str();
  if (!msg.empty()) throw ValidationError("invalid RIS descriptor:" + msg);
}

Eigen::MatrixX3d element_offsets(const RisDescriptor& ris) {
  Eigen::MatrixX3d q(static_cast<Eigen::Index>(ris.element_count()), 3);
  const double cu = 0.5 * (ris.elements_u - 1);
  const double cv = 0.5 * (ris.elements_v - 1);
  Eigen::Index m = 0;
  for (int i = 0; i < ris.elements_u; ++i) {
    for (int j = 0; j < ris.elements_v; ++j, ++m) {
      const Vec3 off = ris.spacing * ((i - cu) * ris.axis_u + (j - cv) * ris.axis_v);
      q.row(m) = off.transpose();
    }
  }
  return q;
}

std::vector<Vec3> element_positions(const RisDescriptor& ris) {
  const Eigen::MatrixX3d q = element_offsets(ris);
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(q.rows()));
  for (Eigen::Index m = 0; m < q.rows(); ++m) out.emplace_back(ris.center + q.row(m).transpose());
  return out;
}

double max_element_offset(const RisDescriptor& ris) {
  const double du = ris.elements_u - 1;
  const double dv = ris.elements_v - 1;
  return 0.5 * ris.spacing * std::sqrt(du * du + dv * dv);
}

Vec3 aod_direction(const AodAngles& a) {
  const double se = std::sin(a.elevation);
  return {se * std::cos(a.azimuth), se * std::sin(a.azimuth), std::cos(a.elevation)};
}

AodAngles aod_angles(const Vec3& origin, const Vec3& target) {
  const Vec3 r = target - origin;
  const double d = r.norm();
  if (!(d > 0.0)) throw GeometryError("degenerate direction: target coincides with origin");
  const Vec3 u = r / d;
  AodAngles out;
  const double rho = std::hypot(u.x(), u.y());
  out.elevation = std::atan2(rho, u.z());
  if (rho == 0.0) {
    out.azimuth = 0.0;
  } else {
    out.azimuth = std::atan2(u.y(), u.x());
    if (out.azimuth == -std::numbers::pi) out.azimuth = std::numbers::pi;
  }
  return out;
}

AodAngles aod_angles(const RisDescriptor& ris, const Vec3& target) {
  return aod_angles(ris.center, target);
}

bool los_blocked(const Vec3& bs, const Vec3& ue, std::span<const Obstacle> obstacles) {
  return std::any_of(obstacles.begin(), obstacles.end(), [&](const Obstacle& o) {
    return segments_intersect2d(bs, ue, o.endpoint_a, o.endpoint_b);
  });
}

}  // namespace risloc
