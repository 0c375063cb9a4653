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

#include "mmplan/nav/nav.hpp"

#include <cmath>
#include <string>

#include "mmplan/error.hpp"
#include "mmplan/geometry/visibility.hpp"

namespace mmplan {

std::string_view to_string(Rejection r) {
  switch (r) {
    case Rejection::kNone: return "none";
    case Rejection::kOutOfScene: return "out-of-scene";
    case Rejection::kNoLineOfSight: return "no-line-of-sight";
  }
  return "unknown";
}

void NavConfig::validate() const {
  if (radii.empty()) throw Error(ErrorCode::kInvalidConfig, "nav.radii is empty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0) || (i > 0 && !(radii[i] > radii[i - 1]))) {
      throw Error(ErrorCode::kInvalidConfig, "nav.radii must be positive and ascending");
    }
  }
  if (!(angular_step > 0) || angular_step > std::numbers::pi) {
    throw Error(ErrorCode::kInvalidConfig, "nav.angular_step must be in (0, pi]");
  }
  if (!(footprint_radius >= 0) || !(camera_height > 0) || !(standing_height >= 0) ||
      !(lambda_item >= 0) || !(los_clearance > 0) || !(los_target_exclusion >= 0)) {
    throw Error(ErrorCode::kInvalidConfig, "nav: negative distance or weight");
  }
}

std::vector<BodyCandidate> sample_positions(const Vec3& target, const NavConfig& config,
                                            double ground_z) {
  config.validate();
  // The epsilon keeps exact divisors such as 2*pi/36 from rounding up.
  const auto per_ring = static_cast<int>(
      std::ceil(2.0 * std::numbers::pi / config.angular_step - 1e-9));
  std::vector<BodyCandidate> out;
  out.reserve(config.radii.size() * per_ring);
  for (double r : config.radii) {
    for (int k = 0; k < per_ring; ++k) {
      const double theta = k * config.angular_step;
      BodyCandidate c;
      c.position = Vec2(target.x() + r * std::cos(theta), target.y() + r * std::sin(theta));
      c.ground_z = ground_z;
      c.yaw = std::atan2(target.y() - c.position.y(), target.x() - c.position.x());
      c.camera_height = config.camera_height;
      out.push_back(c);
    }
  }
  return out;
}

std::vector<BodyCandidate> validate_candidates(std::span<const BodyCandidate> candidates,
                                               const PointCloudScene& scene,
                                               int target_instance,
                                               const NavConfig& config) {
  config.validate();
  const Vec3 target = scene.centroid(target_instance);  // throws kNotFound
  const AlignedBox& bounds = scene.bounds();
  const double diagonal = (bounds.max - bounds.min).norm();
  const double fp = config.footprint_radius;
  const KdTree::Filter not_target = [&scene, target_instance](std::size_t id) {
    return scene.owner(id) != target_instance;
  };

  std::vector<BodyCandidate> out(candidates.begin(), candidates.end());
  for (BodyCandidate& c : out) {
    c.ground_z = scene.floor_z();
    c.d_item = (c.position - target.head<2>()).norm();
    c.valid = false;
    c.reason = Rejection::kNone;

    const Vec3 standing(c.position.x(), c.position.y(), c.ground_z + config.standing_height);
    const auto nearest = scene.index_above_floor().nearest(standing, not_target);
    c.d_obstacles = nearest ? nearest->distance : diagonal;
    c.s_body = body_score(c.d_obstacles, c.d_item, config.lambda_item);

    const bool inside = c.position.x() >= bounds.min.x() + fp &&
                        c.position.x() <= bounds.max.x() - fp &&
                        c.position.y() >= bounds.min.y() + fp &&
                        c.position.y() <= bounds.max.y() - fp;
    if (!inside || c.d_obstacles < fp) {
      c.reason = Rejection::kOutOfScene;
      continue;
    }
    if (!line_of_sight(c.camera_point(), target, scene.index(), config.los_clearance,
                       config.los_target_exclusion, not_target)) {
      c.reason = Rejection::kNoLineOfSight;
      continue;
    }
    c.valid = true;
  }
  return out;
}

}  // namespace mmplan
