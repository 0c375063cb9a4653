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

#include <algorithm>
#include <array>
#include <cmath>

#include "mmplan/error.hpp"
#include "mmplan/rng.hpp"
#include "mmplan/sim/render.hpp"

namespace mmplan::sim {
namespace {

constexpr double kMinVisible = 0.5;  // fraction of the box that must be in frame

// Projected bounding box of world points, empty if any lies behind the camera.
std::optional<BBox2D> project_bbox(std::span<const Vec3> corners, const CameraIntrinsics& k,
                                   const Pose& cam_pose) {
  BBox2D box{1e300, 1e300, -1e300, -1e300};
  for (const Vec3& p : corners) {
    PixelProjection px;
    try {
      px = project(p, k, cam_pose);
    } catch (const Error&) {
      return std::nullopt;
    }
    box.xmin = std::min(box.xmin, px.u);
    box.ymin = std::min(box.ymin, px.v);
    box.xmax = std::max(box.xmax, px.u);
    box.ymax = std::max(box.ymax, px.v);
  }
  return box;
}

BBox2D clip(const BBox2D& b, const CameraIntrinsics& k) {
  return {std::clamp(b.xmin, -0.5, k.width - 0.5), std::clamp(b.ymin, -0.5, k.height - 0.5),
          std::clamp(b.xmax, -0.5, k.width - 0.5), std::clamp(b.ymax, -0.5, k.height - 0.5)};
}

std::array<Vec3, 8> box_corners(const Box& box) {
  const Mat3 r = box.rotation();
  std::array<Vec3, 8> out;
  for (int i = 0; i < 8; ++i) {
    const Vec3 s((i & 1) ? 1 : -1, (i & 2) ? 1 : -1, (i & 4) ? 1 : -1);
    out[i] = box.center + r * s.cwiseProduct(box.half);
  }
  return out;
}

}  // namespace

std::vector<OracleDetection> oracle_detections(const SyntheticScene& scene,
                                               const CameraIntrinsics& k, const Pose& cam_pose,
                                               const NoiseModel& noise, std::uint64_t seed) {
  k.validate();
  std::vector<OracleDetection> exact;
  const Vec3 eye = cam_pose.translation;
  for (std::size_t ci = 0; ci < scene.cabinets.size(); ++ci) {
    const SimCabinet& cab = scene.cabinets[ci];
    for (std::size_t di = 0; di < cab.drawers.size(); ++di) {
      const SimDrawer& dr = cab.drawers[di];
      if ((eye - dr.front_center).dot(cab.axis) <= 0) continue;
      std::array<Vec3, 4> front;
      for (int c = 0; c < 4; ++c) front[c] = cab.drawer_corner(di, c);
      const auto handle_corners = box_corners(dr.handle);
      const auto drawer_box = project_bbox(front, k, cam_pose);
      const auto handle_box = project_bbox(handle_corners, k, cam_pose);
      for (const auto& [cls, box] : {std::pair{DetectionClass::kDrawer, drawer_box},
                                     std::pair{DetectionClass::kHandle, handle_box}}) {
        if (!box || box->area() <= 0) continue;
        if (clip(*box, k).area() < kMinVisible * box->area()) continue;
        OracleDetection o;
        o.exact = *box;
        o.detection.cls = cls;
        o.cabinet = static_cast<int>(ci);
        o.drawer = static_cast<int>(di);
        exact.push_back(o);
      }
    }
  }

  Rng rng(seed);
  std::vector<OracleDetection> out;
  for (OracleDetection& o : exact) {
    // Draw every variate so one detection's dropout leaves the others' noise
    // unchanged.
    const bool drop = rng.bernoulli(noise.detection_dropout);
    std::array<double, 4> jitter;
    for (double& j : jitter) j = noise.bbox_jitter_sigma * rng.normal();
    const double confidence = rng.uniform(noise.confidence_lo, noise.confidence_hi);
    if (drop) continue;
    BBox2D b{o.exact.xmin + jitter[0], o.exact.ymin + jitter[1], o.exact.xmax + jitter[2],
             o.exact.ymax + jitter[3]};
    if (b.xmin > b.xmax) std::swap(b.xmin, b.xmax);
    if (b.ymin > b.ymax) std::swap(b.ymin, b.ymax);
    o.detection.bbox = clip(b, k);
    o.detection.confidence = confidence;
    out.push_back(o);
  }
  return out;
}

std::vector<Detection2D> oracle_detector(const SyntheticScene& scene, const CameraIntrinsics& k,
                                         const Pose& cam_pose, const NoiseModel& noise,
                                         std::uint64_t seed) {
  std::vector<Detection2D> out;
  for (const OracleDetection& o : oracle_detections(scene, k, cam_pose, noise, seed)) {
    out.push_back(o.detection);
  }
  return out;
}

}  // namespace mmplan::sim
