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

#include <numbers>
#include <span>
#include <string_view>
#include <vector>

#include "mmplan/geometry/types.hpp"
#include "mmplan/scene/scene.hpp"

namespace mmplan {

enum class Rejection { kNone, kOutOfScene, kNoLineOfSight };

std::string_view to_string(Rejection r);

struct BodyCandidate {
  Vec2 position = Vec2::Zero();  // ground plane, meters
  double ground_z = 0;
  double yaw = 0;                // facing direction, radians
  double camera_height = 0.8;    // above ground
  double s_body = 0;
  double d_obstacles = 0;
  double d_item = 0;
  bool valid = false;
  Rejection reason = Rejection::kNone;

  Vec3 ground_point() const { return {position.x(), position.y(), ground_z}; }
  Vec3 camera_point() const { return {position.x(), position.y(), ground_z + camera_height}; }
};

struct NavConfig {
  std::vector<double> radii{0.7, 0.9, 1.1};
  double angular_step = 2.0 * std::numbers::pi / 36.0;
  double footprint_radius = 0.35;
  double camera_height = 0.8;
  double standing_height = 0.05;     // body clearance probe height, just above the floor band
  double lambda_item = 0.5;
  double los_clearance = 0.10;
  double los_target_exclusion = 0.2;

  // Throws kInvalidConfig.
  void validate() const;
};

// Body score: clearance from obstacles traded against distance to the item.
inline double body_score(double d_obstacles, double d_item, double lambda_item) {
  return d_obstacles - lambda_item * d_item;
}

// Rings of candidates around the ground projection of `target`, yaw facing
// the target. Count = radii.size() * ceil(2*pi / angular_step).
std::vector<BodyCandidate> sample_positions(const Vec3& target, const NavConfig& config,
                                            double ground_z = 0.0);

// Marks each candidate valid or rejected and fills the body score terms.
// A candidate is in-scene when it lies inside the scene bounds shrunk by the
// footprint and its standing point clears every non-floor, non-target point
// by the footprint radius; it must also see the target centroid from its
// camera point. When no obstacles remain after exclusion, d_obstacles is
// the scene bounding-box diagonal.
// Throws kNotFound for an unknown target instance.
std::vector<BodyCandidate> validate_candidates(std::span<const BodyCandidate> candidates,
                                               const PointCloudScene& scene,
                                               int target_instance,
                                               const NavConfig& config);

}  // namespace mmplan
