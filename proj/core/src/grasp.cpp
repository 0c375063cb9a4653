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

#include "mmplan/grasp/grasp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/Geometry>

#include "mmplan/error.hpp"
#include "mmplan/geometry/kdtree.hpp"

namespace mmplan {

std::vector<Mat3> sweep_rotations(int count) {
  if (count < 1) throw Error(ErrorCode::kInvalidArgument, "sweep count must be >= 1");
  std::vector<Mat3> out;
  for (int i = 0; i < count; ++i) {
    const double yaw = 2.0 * std::numbers::pi * i / count;
    out.push_back(Eigen::AngleAxisd(yaw, Vec3::UnitZ()).toRotationMatrix());
  }
  return out;
}

std::vector<GraspCandidate> top_k(std::span<const GraspCandidate> candidates,
                                  std::size_t k) {
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return candidates[a].score > candidates[b].score;
  });
  order.resize(std::min(k, order.size()));
  std::vector<GraspCandidate> out;
  for (std::size_t i : order) out.push_back(candidates[i]);
  return out;
}

std::vector<GraspCandidate> merge_rotation_sweeps(std::span<const GraspBatch> batches,
                                                  const Vec3& centroid) {
  std::vector<GraspCandidate> out;
  for (std::size_t b = 0; b < batches.size(); ++b) {
    const Mat3& r = batches[b].rotation;
    if (!is_proper_rotation(r)) {
      throw Error(ErrorCode::kInvalidRotation,
                  "sweep batch " + std::to_string(b) + " rotation is not a proper rotation");
    }
    const Mat3 r_inv = r.transpose();
    for (const GraspCandidate& g : batches[b].candidates) {
      GraspCandidate w = g;
      w.pose.rotation = r_inv * g.pose.rotation;
      w.pose.translation = centroid + r_inv * (g.pose.translation - centroid);
      w.source_rotation = static_cast<int>(b);
      out.push_back(w);
    }
  }
  return out;
}

std::vector<GraspCandidate> filter_grasps(std::span<const GraspCandidate> candidates,
                                          std::span<const Vec3> object_points,
                                          double on_object_tol) {
  if (object_points.empty()) {
    throw Error(ErrorCode::kDegenerateInput, "object has no points");
  }
  const KdTree index(std::vector<Vec3>(object_points.begin(), object_points.end()));
  std::vector<GraspCandidate> out;
  for (const GraspCandidate& g : candidates) {
    if (!(g.score > 0)) continue;
    if (index.nearest(g.center())->distance <= on_object_tol) out.push_back(g);
  }
  return out;
}

}  // namespace mmplan
