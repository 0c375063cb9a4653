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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "mmplan/geometry/types.hpp"

namespace mmplan {

// normal . p == offset for points on the plane.
struct Plane {
  Vec3 normal = Vec3::UnitZ();
  double offset = 0;
  std::size_t inlier_count = 0;

  double signed_distance(const Vec3& p) const { return normal.dot(p) - offset; }
};

struct RansacParams {
  double threshold = 0.005;         // inlier band, meters
  int iterations = 1000;
  double min_inlier_fraction = 0.3; // below this the fit is rejected
};

// Total least-squares plane through `points` (smallest principal axis).
// inlier_count is set to points.size().
Plane fit_plane(std::span<const Vec3> points);

// Three-point RANSAC with a least-squares refit on the winning consensus set.
// Deterministic for a given seed.
//
// Throws kDegenerateInput for fewer than 3 points or collinear input and
// kNoPlaneFound when the best consensus is below min_inlier_fraction.
Plane ransac_plane(std::span<const Vec3> points, const RansacParams& params,
                   std::uint64_t seed);

}  // namespace mmplan
