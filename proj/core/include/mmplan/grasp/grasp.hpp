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
#include <vector>

#include "mmplan/geometry/pose.hpp"

namespace mmplan {

// Two-finger grasp. The pose translation is the grasp centre (midpoint
// between the fingertip contacts); rotation column 0 is the approach axis,
// column 1 the finger closing axis.
struct GraspCandidate {
  Pose pose;
  double width = 0;
  double score = 0;
  int source_rotation = 0;

  const Vec3& center() const { return pose.translation; }
  Vec3 approach() const { return pose.rotation.col(0); }
};

// One detection pass: grasps expressed in a frame where the object was
// rotated by `rotation` about its centroid.
struct GraspBatch {
  Mat3 rotation = Mat3::Identity();
  std::vector<GraspCandidate> candidates;
};

struct GraspConfig {
  double on_object_tol = 0.02;  // meters
  int sweep_count = 4;          // yaw rotations per object
  int top_k = 10;               // grasps kept per sweep rotation
  double isolate_padding = 0.3; // environment context around the object, meters
};

// Yaw rotations about +z in equal increments, starting at identity.
std::vector<Mat3> sweep_rotations(int count);

// Highest-scoring k candidates, stable for equal scores.
std::vector<GraspCandidate> top_k(std::span<const GraspCandidate> candidates,
                                  std::size_t k);

// De-rotates every batch about `centroid` into the common world frame and
// tags each grasp with its batch index. Throws kInvalidRotation.
std::vector<GraspCandidate> merge_rotation_sweeps(std::span<const GraspBatch> batches,
                                                  const Vec3& centroid);

// Keeps grasps with a strictly positive score whose centre lies within
// on_object_tol of an object point. Order is preserved.
// Throws kDegenerateInput for an empty object.
std::vector<GraspCandidate> filter_grasps(std::span<const GraspCandidate> candidates,
                                          std::span<const Vec3> object_points,
                                          double on_object_tol);

}  // namespace mmplan
