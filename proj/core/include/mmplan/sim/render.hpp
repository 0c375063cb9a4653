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

#include <cstdint>
#include <optional>
#include <span>

#include "mmplan/drawer/drawer.hpp"
#include "mmplan/sim/world.hpp"

namespace mmplan::sim {

struct NoiseModel {
  double depth_sigma = 0.005;       // meters
  double depth_dropout = 0.1;       // per pixel
  double detection_dropout = 0.05;  // per detection
  double bbox_jitter_sigma = 2.0;   // pixels, per box coordinate
  double confidence_lo = 0.6;
  double confidence_hi = 0.95;
  double grasp_sigma = 0.006;       // meters, proposal centre noise for easy objects

  static NoiseModel reference() { return {}; }
  static NoiseModel noiseless();

  // Throws kInvalidConfig.
  void validate() const;
};

// Ray parameter of the nearest hit along origin + t * dir, t > 0.
std::optional<double> intersect(const Shape& shape, const Vec3& origin, const Vec3& dir);

// Camera-frame depth of the nearest surface per pixel (0 where nothing is
// hit), then Gaussian noise and dropout. Pixel (x, y) is centred on the
// integer coordinate.
DepthImage render_depth(std::span<const Shape> shapes, const CameraIntrinsics& k,
                        const Pose& cam_pose, const NoiseModel& noise, std::uint64_t seed);

DepthImage render_depth(const SyntheticScene& scene, const CameraIntrinsics& k,
                        const Pose& cam_pose, const NoiseModel& noise, std::uint64_t seed);

// Ground-truth detection paired with its noisy output (for diagnostics).
struct OracleDetection {
  Detection2D detection;
  BBox2D exact;
  int cabinet = -1;
  int drawer = -1;
};

// Projects every front-facing drawer front and handle into the image, then
// applies dropout, per-coordinate jitter and sampled confidences.
std::vector<OracleDetection> oracle_detections(const SyntheticScene& scene,
                                               const CameraIntrinsics& k, const Pose& cam_pose,
                                               const NoiseModel& noise, std::uint64_t seed);

std::vector<Detection2D> oracle_detector(const SyntheticScene& scene, const CameraIntrinsics& k,
                                         const Pose& cam_pose, const NoiseModel& noise,
                                         std::uint64_t seed);

// Camera at `eye` looking at `target` with image rows pointing down.
Pose look_at(const Vec3& eye, const Vec3& target);

}  // namespace mmplan::sim
