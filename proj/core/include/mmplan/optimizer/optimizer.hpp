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
#include <span>

#include "mmplan/grasp/grasp.hpp"
#include "mmplan/nav/nav.hpp"

namespace mmplan {

struct OptimizerWeights {
  double lambda_body = 0.01;
  double lambda_align = 0.02;
  double temperature = 1.0;

  // Throws kInvalidConfig unless temperature > 0.
  void validate() const;
};

struct JointSelection {
  std::size_t grasp_index = 0;
  std::size_t body_index = 0;
  double s = 0;
  double s_grasp = 0;
  double s_body = 0;
  double s_align = 0;
};

inline double joint_score(double s_grasp, double s_body, double s_align,
                          const OptimizerWeights& w) {
  return s_grasp + w.lambda_body * s_body + w.lambda_align * s_align;
}

// tanh(T * cos angle) between the robot-to-target direction (from the body's
// camera point) and the grasp approach axis.
// Throws kDegenerateGeometry when either direction has zero length.
double align_score(const BodyCandidate& body, const GraspCandidate& grasp,
                   const Vec3& target, double temperature);

// Exhaustive argmax of the joint score over grasps x bodies. Ties go to the
// higher s_grasp, then the lower grasp index, then the lower body index.
// Throws kNoGrasp / kNoPose for empty inputs and kInvalidArgument if a body
// is not marked valid.
JointSelection select_best(std::span<const GraspCandidate> grasps,
                           std::span<const BodyCandidate> bodies, const Vec3& target,
                           const OptimizerWeights& weights);

}  // namespace mmplan
