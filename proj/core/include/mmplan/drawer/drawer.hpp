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
#include <string_view>
#include <vector>

#include "mmplan/geometry/bbox.hpp"
#include "mmplan/geometry/camera.hpp"
#include "mmplan/geometry/ransac.hpp"

namespace mmplan {

enum class DetectionClass { kHandle, kDrawer };

std::string_view to_string(DetectionClass c);

struct Detection2D {
  DetectionClass cls = DetectionClass::kHandle;
  BBox2D bbox;
  double confidence = 0;
};

// Row-major metric depth, 0 marks an invalid pixel.
struct DepthImage {
  int width = 0;
  int height = 0;
  std::vector<float> data;

  DepthImage() = default;
  DepthImage(int w, int h, float fill = 0.f)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

  float at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
  float& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
};

struct DetectionFrame {
  CameraIntrinsics intrinsics;
  Pose cam_pose;  // world <- camera
  std::vector<Detection2D> detections;
  DepthImage depth;

  std::vector<Detection2D> of_class(DetectionClass c) const;
};

struct MatchParams {
  double kappa = 10.0;
  double ioa_min = 0.5;
  double sentinel = 1e6;
};

struct MatchedPair {
  Detection2D handle;
  Detection2D drawer;
  double cost = 0;
  double ioa = 0;
};

// Fraction of the handle box covered by the drawer box.
// Throws kDegenerateBBox for a handle without positive area.
double ioa(const BBox2D& handle, const BBox2D& drawer);

// -(kappa * IoA + drawer confidence)
double matching_cost(const Detection2D& handle, const Detection2D& drawer, double kappa);

// Optimal handle/drawer assignment; pairs below ioa_min are dropped.
// Output follows handle order.
std::vector<MatchedPair> match_handles_to_drawers(std::span<const Detection2D> handles,
                                                  std::span<const Detection2D> drawers,
                                                  const MatchParams& params = {});

// Backprojects the handle box centre using the median valid depth inside the
// box. Throws kMissingDepth.
Vec3 handle_center_3d(const MatchedPair& pair, const DetectionFrame& frame);

struct AxisEstimate {
  Vec3 axis = Vec3::UnitZ();  // unit, points toward the camera side
  std::size_t inliers = 0;
  Plane plane;
};

// Fits a plane to the drawer-box pixels outside the handle box.
// Throws kDegenerateInput or kNoPlaneFound.
AxisEstimate estimate_axis(const MatchedPair& pair, const DetectionFrame& frame,
                           const RansacParams& ransac, std::uint64_t seed);

// Per-view estimate fed to fuse_views.
struct ViewTarget {
  Vec3 handle_center = Vec3::Zero();
  Vec3 axis = Vec3::UnitX();
  double confidence = 0;
  std::size_t inliers = 0;
};

struct DrawerTarget {
  Vec3 handle_center = Vec3::Zero();
  Vec3 axis = Vec3::UnitX();
  std::size_t supporting_views = 1;
  std::size_t plane_inliers = 0;
  double confidence = 0;  // summed over supporting views
  bool refined = false;
};

// Greedy clustering seeded by the most confident unclustered view; members
// are averaged with confidence weights. Sorted by total confidence.
std::vector<DrawerTarget> fuse_views(std::span<const ViewTarget> views,
                                     double cluster_radius);

struct PullPlan {
  Pose body_pose;               // on the ground, facing the drawer
  Vec3 pull_start = Vec3::Zero();
  Vec3 pull_end = Vec3::Zero();
  Vec3 axis = Vec3::UnitX();    // horizontal pull direction
};

struct DrawerConfig {
  MatchParams match;
  RansacParams ransac;
  double cluster_radius = 0.10;
  double gate_radius = 0.15;
  double standoff = 0.7;
  double pull_distance = 0.25;
  double max_vertical_deg = 30.0;  // axes closer than this to vertical are rejected

  void validate() const;
};

// Throws kInvalidAxis when the axis is within max_vertical_deg of vertical.
PullPlan plan_pull(const DrawerTarget& target, double standoff, double pull_distance,
                   double ground_z = 0.0, double max_vertical_deg = 30.0);

// Match, backproject and fit every handle in one frame. Pairs whose depth or
// plane fit fails are skipped.
std::vector<ViewTarget> process_frame(const DetectionFrame& frame, const DrawerConfig& config,
                                      std::uint64_t seed);

// process_frame over all frames, then fuse_views.
std::vector<DrawerTarget> detect_drawers(std::span<const DetectionFrame> frames,
                                         const DrawerConfig& config, std::uint64_t seed);

// Best-effort close-range update. Falls back to `initial` (refined = false)
// when no close-frame estimate lies within gate_radius.
DrawerTarget refine_target(const DrawerTarget& initial, const DetectionFrame& close_frame,
                           const DrawerConfig& config, std::uint64_t seed);

}  // namespace mmplan
