// Copyright 2026 The mmplan Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mmplan/geometry/visibility.hpp"

#include <algorithm>

namespace mmplan {

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double len_sq = ab.squaredNorm();
  if (len_sq == 0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len_sq, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

bool line_of_sight(const Vec3& from, const Vec3& to, const KdTree& obstacles,
                   double clearance, double target_exclusion,
                   const KdTree::Filter& accept) {
  if ((to - from).squaredNorm() == 0) return true;
  const Vec3 pad = Vec3::Constant(clearance);
  const Vec3 lo = from.cwiseMin(to) - pad;
  const Vec3 hi = from.cwiseMax(to) + pad;
  const double excl_sq = target_exclusion * target_exclusion;
  // for_each_in_box returns false exactly when a blocker stopped the scan.
  return obstacles.for_each_in_box(lo, hi, [&](std::size_t id, const Vec3& p) {
    if ((p - to).squaredNorm() <= excl_sq) return true;
    if (point_segment_distance(p, from, to) > clearance) return true;
    if (accept && !accept(id)) return true;
    return false;
  });
}

}  // namespace mmplan
