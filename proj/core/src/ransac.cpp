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

#include "mmplan/geometry/ransac.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "mmplan/error.hpp"
#include "mmplan/rng.hpp"

namespace mmplan {
namespace {

struct Moments {
  Vec3 centroid;
  Eigen::SelfAdjointEigenSolver<Mat3> eig;
};

Moments moments(std::span<const Vec3> points) {
  Vec3 c = Vec3::Zero();
  for (const Vec3& p : points) c += p;
  c /= static_cast<double>(points.size());
  Mat3 cov = Mat3::Zero();
  for (const Vec3& p : points) {
    const Vec3 d = p - c;
    cov += d * d.transpose();
  }
  return {c, Eigen::SelfAdjointEigenSolver<Mat3>(cov)};
}

}  // namespace

Plane fit_plane(std::span<const Vec3> points) {
  if (points.size() < 3) {
    throw Error(ErrorCode::kDegenerateInput, "plane fit needs at least 3 points");
  }
  const Moments m = moments(points);
  Plane plane;
  plane.normal = m.eig.eigenvectors().col(0).normalized();  // ascending order
  plane.offset = plane.normal.dot(m.centroid);
  plane.inlier_count = points.size();
  return plane;
}

Plane ransac_plane(std::span<const Vec3> points, const RansacParams& params,
                   std::uint64_t seed) {
  const std::size_t n = points.size();
  if (n < 3) {
    throw Error(ErrorCode::kDegenerateInput,
                "RANSAC needs at least 3 points, got " + std::to_string(n));
  }
  if (!(params.threshold > 0) || params.iterations < 1) {
    throw Error(ErrorCode::kInvalidArgument, "RANSAC threshold/iterations invalid");
  }
  {
    // Collinear (or coincident) input has a rank-1 scatter.
    const Moments m = moments(points);
    const Vec3 ev = m.eig.eigenvalues();
    if (ev(2) <= 0 || ev(1) <= 1e-12 * ev(2)) {
      throw Error(ErrorCode::kDegenerateInput, "points are collinear");
    }
  }

  Rng rng(seed);
  std::size_t best_count = 0;
  Vec3 best_normal = Vec3::UnitZ();
  double best_offset = 0;

  for (int it = 0; it < params.iterations; ++it) {
    const std::size_t i = rng.index(n);
    std::size_t j = rng.index(n - 1);
    if (j >= i) ++j;
    std::size_t k = rng.index(n - 2);
    if (k >= std::min(i, j)) ++k;
    if (k >= std::max(i, j)) ++k;

    const Vec3 cross = (points[j] - points[i]).cross(points[k] - points[i]);
    const double norm = cross.norm();
    if (norm < 1e-12) continue;
    const Vec3 normal = cross / norm;
    const double offset = normal.dot(points[i]);

    std::size_t count = 0;
    for (const Vec3& p : points) {
      if (std::abs(normal.dot(p) - offset) <= params.threshold) ++count;
    }
    if (count > best_count) {
      best_count = count;
      best_normal = normal;
      best_offset = offset;
    }
  }

  if (best_count < 3 ||
      static_cast<double>(best_count) < params.min_inlier_fraction * static_cast<double>(n)) {
    throw Error(ErrorCode::kNoPlaneFound,
                "best consensus " + std::to_string(best_count) + " of " +
                    std::to_string(n) + " points is below the inlier fraction");
  }

  std::vector<Vec3> inliers;
  inliers.reserve(best_count);
  for (const Vec3& p : points) {
    if (std::abs(best_normal.dot(p) - best_offset) <= params.threshold) {
      inliers.push_back(p);
    }
  }
  Plane refit = fit_plane(inliers);
  // Keep the sampled hypothesis' orientation so the sign is seed-stable.
  if (refit.normal.dot(best_normal) < 0) {
    refit.normal = -refit.normal;
    refit.offset = -refit.offset;
  }
  refit.inlier_count = best_count;
  return refit;
}

}  // namespace mmplan
