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

#include "mmplan/optimizer/optimizer.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "mmplan/error.hpp"

namespace mmplan {

void OptimizerWeights::validate() const {
  if (!(temperature > 0)) {
    throw Error(ErrorCode::kInvalidConfig, "optimizer.temperature must be positive");
  }
}

double align_score(const BodyCandidate& body, const GraspCandidate& grasp,
                   const Vec3& target, double temperature) {
  const Vec3 to_target = target - body.camera_point();
  const Vec3 approach = grasp.approach();
  const double n_rt = to_target.norm();
  const double n_g = approach.norm();
  if (n_rt == 0 || n_g == 0) {
    throw Error(ErrorCode::kDegenerateGeometry, "zero-length alignment direction");
  }
  return std::tanh(temperature * to_target.dot(approach) / (n_rt * n_g));
}

JointSelection select_best(std::span<const GraspCandidate> grasps,
                           std::span<const BodyCandidate> bodies, const Vec3& target,
                           const OptimizerWeights& weights) {
  if (grasps.empty()) throw Error(ErrorCode::kNoGrasp, "no grasp candidates");
  if (bodies.empty()) throw Error(ErrorCode::kNoPose, "no valid body poses");
  weights.validate();

  std::vector<Vec3> approach(grasps.size());
  for (std::size_t g = 0; g < grasps.size(); ++g) {
    const double n = grasps[g].approach().norm();
    if (n == 0) throw Error(ErrorCode::kDegenerateGeometry, "zero grasp approach axis");
    approach[g] = grasps[g].approach() / n;
  }
  std::vector<Vec3> view(bodies.size());
  for (std::size_t b = 0; b < bodies.size(); ++b) {
    if (!bodies[b].valid) {
      throw Error(ErrorCode::kInvalidArgument,
                  "body candidate " + std::to_string(b) + " is not valid");
    }
    const Vec3 d = target - bodies[b].camera_point();
    const double n = d.norm();
    if (n == 0) throw Error(ErrorCode::kDegenerateGeometry, "body camera at target");
    view[b] = d / n;
  }

  JointSelection best;
  bool have = false;
  for (std::size_t g = 0; g < grasps.size(); ++g) {
    const double s_grasp = grasps[g].score;
    for (std::size_t b = 0; b < bodies.size(); ++b) {
      const double s_align = std::tanh(weights.temperature * view[b].dot(approach[g]));
      const double s = joint_score(s_grasp, bodies[b].s_body, s_align, weights);
      // Iteration runs in ascending (grasp, body) order, so requiring strict
      // improvement implements the index part of the tie rule.
      if (!have || s > best.s || (s == best.s && s_grasp > best.s_grasp)) {
        best = {g, b, s, s_grasp, bodies[b].s_body, s_align};
        have = true;
      }
    }
  }
  return best;
}

}  // namespace mmplan
