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
#include <cmath>
#include <limits>

#include "mmplan/error.hpp"
#include "mmplan/rng.hpp"
#include "mmplan/sim/render.hpp"

namespace mmplan::sim {
namespace {

constexpr double kEps = 1e-9;

std::optional<double> intersect_box(const Box& box, const Mat3& rt, const Vec3& origin,
                                    const Vec3& dir) {
  const Vec3 o = rt * (origin - box.center);
  const Vec3 d = rt * dir;
  double t_near = -std::numeric_limits<double>::infinity();
  double t_far = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a) {
    if (std::abs(d(a)) < 1e-15) {
      if (std::abs(o(a)) > box.half(a)) return std::nullopt;
      continue;
    }
    double t0 = (-box.half(a) - o(a)) / d(a);
    double t1 = (box.half(a) - o(a)) / d(a);
    if (t0 > t1) std::swap(t0, t1);
    t_near = std::max(t_near, t0);
    t_far = std::min(t_far, t1);
    if (t_near > t_far) return std::nullopt;
  }
  if (t_near > kEps) return t_near;
  if (t_far > kEps) return t_far;
  return std::nullopt;
}

std::optional<double> intersect_cylinder(const Cylinder& cyl, const Vec3& origin,
                                         const Vec3& dir) {
  const Vec3 o = origin - cyl.base_center;
  std::optional<double> best;
  auto consider = [&](double t) {
    if (t > kEps && (!best || t < *best)) best = t;
  };
  const double a = dir.x() * dir.x() + dir.y() * dir.y();
  if (a > 1e-15) {
    const double b = 2 * (o.x() * dir.x() + o.y() * dir.y());
    const double c = o.x() * o.x() + o.y() * o.y() - cyl.radius * cyl.radius;
    const double disc = b * b - 4 * a * c;
    if (disc >= 0) {
      const double sq = std::sqrt(disc);
      for (double t : {(-b - sq) / (2 * a), (-b + sq) / (2 * a)}) {
        const double z = o.z() + t * dir.z();
        if (z >= 0 && z <= cyl.height) consider(t);
      }
    }
  }
  if (std::abs(dir.z()) > 1e-15) {
    for (double plane : {0.0, cyl.height}) {
      const double t = (plane - o.z()) / dir.z();
      const Vec3 p = o + t * dir;
      if (p.x() * p.x() + p.y() * p.y() <= cyl.radius * cyl.radius) consider(t);
    }
  }
  return best;
}

}  // namespace

NoiseModel NoiseModel::noiseless() {
  NoiseModel n;
  n.depth_sigma = 0;
  n.depth_dropout = 0;
  n.detection_dropout = 0;
  n.bbox_jitter_sigma = 0;
  n.confidence_lo = 0.9;
  n.confidence_hi = 0.9;
  n.grasp_sigma = 0;
  return n;
}

void NoiseModel::validate() const {
  auto fail = [](const std::string& key, const std::string& what) {
    throw Error(ErrorCode::kInvalidConfig, "'noise." + key + "' " + what);
  };
  if (!(depth_sigma >= 0)) fail("depth_sigma", "must be >= 0");
  if (!(bbox_jitter_sigma >= 0)) fail("bbox_jitter_sigma", "must be >= 0");
  if (!(grasp_sigma >= 0)) fail("grasp_sigma", "must be >= 0");
  if (!(depth_dropout >= 0 && depth_dropout <= 1)) fail("depth_dropout", "must be in [0, 1]");
  if (!(detection_dropout >= 0 && detection_dropout <= 1)) {
    fail("detection_dropout", "must be in [0, 1]");
  }
  if (!(confidence_lo > 0 && confidence_lo <= confidence_hi && confidence_hi <= 1)) {
    fail("confidence_lo", "and confidence_hi must satisfy 0 < lo <= hi <= 1");
  }
}

std::optional<double> intersect(const Shape& shape, const Vec3& origin, const Vec3& dir) {
  if (const auto* b = std::get_if<Box>(&shape)) {
    return intersect_box(*b, b->rotation().transpose(), origin, dir);
  }
  return intersect_cylinder(std::get<Cylinder>(shape), origin, dir);
}

DepthImage render_depth(std::span<const Shape> shapes, const CameraIntrinsics& k,
                        const Pose& cam_pose, const NoiseModel& noise, std::uint64_t seed) {
  k.validate();
  DepthImage img(k.width, k.height);
  Rng rng(seed);
  const Vec3 origin = cam_pose.translation;
  std::vector<Mat3> inverse_rotations;
  for (const Shape& s : shapes) {
    const auto* b = std::get_if<Box>(&s);
    inverse_rotations.push_back(b ? Mat3(b->rotation().transpose()) : Mat3::Identity());
  }
  for (int y = 0; y < k.height; ++y) {
    for (int x = 0; x < k.width; ++x) {
      // The camera-frame ray has unit z, so the hit parameter is the depth.
      const Vec3 dir = cam_pose.rotation * Vec3((x - k.cx) / k.fx, (y - k.cy) / k.fy, 1.0);
      double depth = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < shapes.size(); ++i) {
        const Shape& s = shapes[i];
        const auto* b = std::get_if<Box>(&s);
        const auto t = b ? intersect_box(*b, inverse_rotations[i], origin, dir)
                         : intersect_cylinder(std::get<Cylinder>(s), origin, dir);
        if (t && *t < depth) depth = *t;
      }
      const double n = rng.normal();
      const bool drop = rng.bernoulli(noise.depth_dropout);
      if (!std::isfinite(depth) || drop) continue;
      depth += noise.depth_sigma * n;
      if (depth > 0) img.at(x, y) = static_cast<float>(depth);
    }
  }
  return img;
}

DepthImage render_depth(const SyntheticScene& scene, const CameraIntrinsics& k,
                        const Pose& cam_pose, const NoiseModel& noise, std::uint64_t seed) {
  const std::vector<Shape> shapes = scene.shapes();
  return render_depth(shapes, k, cam_pose, noise, seed);
}

Pose look_at(const Vec3& eye, const Vec3& target) {
  return Pose{look_rotation(target - eye), eye};
}

}  // namespace mmplan::sim
