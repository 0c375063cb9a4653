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

#include "mmplan/drawer/drawer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "mmplan/drawer/hungarian.hpp"
#include "mmplan/error.hpp"
#include "mmplan/rng.hpp"

namespace mmplan {
namespace {

// Integer pixel range [lo, hi] covered by a box, clipped to the image.
struct PixelRange {
  int x0, x1, y0, y1;
};

PixelRange pixels_in(const BBox2D& b, int width, int height) {
  return {std::max(0, static_cast<int>(std::ceil(b.xmin))),
          std::min(width - 1, static_cast<int>(std::floor(b.xmax))),
          std::max(0, static_cast<int>(std::ceil(b.ymin))),
          std::min(height - 1, static_cast<int>(std::floor(b.ymax)))};
}

double median(std::vector<double> values) {
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  if (values.size() % 2 == 1) return values[mid];
  const double hi = values[mid];
  const double lo = *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (lo + hi);
}

}  // namespace

std::string_view to_string(DetectionClass c) {
  return c == DetectionClass::kHandle ? "handle" : "drawer";
}

std::vector<Detection2D> DetectionFrame::of_class(DetectionClass c) const {
  std::vector<Detection2D> out;
  for (const Detection2D& d : detections) {
    if (d.cls == c) out.push_back(d);
  }
  return out;
}

double ioa(const BBox2D& handle, const BBox2D& drawer) {
  const double area = handle.area();
  if (!(area > 0)) throw Error(ErrorCode::kDegenerateBBox, "handle box has zero area");
  return std::clamp(intersection_area(handle, drawer) / area, 0.0, 1.0);
}

double matching_cost(const Detection2D& handle, const Detection2D& drawer, double kappa) {
  return -(kappa * ioa(handle.bbox, drawer.bbox) + drawer.confidence);
}

std::vector<MatchedPair> match_handles_to_drawers(std::span<const Detection2D> handles,
                                                  std::span<const Detection2D> drawers,
                                                  const MatchParams& params) {
  std::vector<MatchedPair> out;
  if (handles.empty() || drawers.empty()) return out;

  const auto rows = static_cast<Eigen::Index>(handles.size());
  const auto cols = static_cast<Eigen::Index>(drawers.size());
  Eigen::MatrixXd cost(rows, cols);
  Eigen::MatrixXd overlap(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      // A handle without area cannot be contained; it scores as no overlap.
      const double o = handles[i].bbox.area() > 0 ? ioa(handles[i].bbox, drawers[j].bbox) : 0.0;
      overlap(i, j) = o;
      cost(i, j) = -(params.kappa * o + drawers[j].confidence);
    }
  }
  const std::vector<int> assignment = solve_assignment(cost, params.sentinel);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const int j = assignment[i];
    if (j < 0 || overlap(i, j) < params.ioa_min) continue;
    out.push_back({handles[i], drawers[j], cost(i, j), overlap(i, j)});
  }
  return out;
}

Vec3 handle_center_3d(const MatchedPair& pair, const DetectionFrame& frame) {
  const DepthImage& depth = frame.depth;
  const PixelRange r = pixels_in(pair.handle.bbox, depth.width, depth.height);
  std::vector<double> values;
  for (int y = r.y0; y <= r.y1; ++y) {
    for (int x = r.x0; x <= r.x1; ++x) {
      const float d = depth.at(x, y);
      if (d > 0 && std::isfinite(d)) values.push_back(d);
    }
  }
  if (values.empty()) throw Error(ErrorCode::kMissingDepth, "no valid depth inside handle box");
  const double u = std::clamp(pair.handle.bbox.center_x(), 0.0, depth.width - 1.0);
  const double v = std::clamp(pair.handle.bbox.center_y(), 0.0, depth.height - 1.0);
  return backproject(u, v, median(std::move(values)), frame.intrinsics, frame.cam_pose);
}

AxisEstimate estimate_axis(const MatchedPair& pair, const DetectionFrame& frame,
                           const RansacParams& ransac, std::uint64_t seed) {
  const DepthImage& depth = frame.depth;
  const PixelRange r = pixels_in(pair.drawer.bbox, depth.width, depth.height);
  std::vector<Vec3> points;
  for (int y = r.y0; y <= r.y1; ++y) {
    for (int x = r.x0; x <= r.x1; ++x) {
      if (pair.handle.bbox.contains(x, y)) continue;
      const float d = depth.at(x, y);
      if (!(d > 0) || !std::isfinite(d)) continue;
      points.push_back(backproject(x, y, d, frame.intrinsics, frame.cam_pose));
    }
  }
  if (points.size() < 3) {
    throw Error(ErrorCode::kDegenerateInput, "fewer than 3 drawer-front depth samples");
  }
  AxisEstimate est;
  est.plane = ransac_plane(points, ransac, seed);
  if (est.plane.signed_distance(frame.cam_pose.translation) < 0) {
    est.plane.normal = -est.plane.normal;
    est.plane.offset = -est.plane.offset;
  }
  est.axis = est.plane.normal;
  est.inliers = est.plane.inlier_count;
  return est;
}

std::vector<DrawerTarget> fuse_views(std::span<const ViewTarget> views,
                                     double cluster_radius) {
  std::vector<std::size_t> order(views.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return views[a].confidence > views[b].confidence;
  });

  std::vector<bool> used(views.size(), false);
  std::vector<DrawerTarget> out;
  for (std::size_t seed : order) {
    if (used[seed]) continue;
    std::vector<std::size_t> members;
    for (std::size_t i : order) {
      if (!used[i] &&
          (views[i].handle_center - views[seed].handle_center).norm() <= cluster_radius) {
        used[i] = true;
        members.push_back(i);
      }
    }
    double total = 0;
    for (std::size_t i : members) total += views[i].confidence;
    DrawerTarget t;
    t.handle_center = Vec3::Zero();
    Vec3 axis_sum = Vec3::Zero();
    for (std::size_t i : members) {
      const double w = total > 0 ? views[i].confidence / total : 1.0 / members.size();
      t.handle_center += w * views[i].handle_center;
      axis_sum += w * views[i].axis;
      t.plane_inliers += views[i].inliers;
    }
    t.axis = axis_sum.norm() > 1e-12 ? axis_sum.normalized() : views[seed].axis;
    t.supporting_views = members.size();
    t.confidence = total;
    out.push_back(t);
  }
  std::stable_sort(out.begin(), out.end(), [](const DrawerTarget& a, const DrawerTarget& b) {
    return a.confidence > b.confidence;
  });
  return out;
}

void DrawerConfig::validate() const {
  if (!(cluster_radius > 0) || !(gate_radius > 0) || !(standoff > 0) ||
      !(pull_distance > 0) || !(match.ioa_min >= 0 && match.ioa_min <= 1) ||
      !(ransac.threshold > 0) || ransac.iterations < 1 ||
      !(max_vertical_deg >= 0 && max_vertical_deg < 90)) {
    throw Error(ErrorCode::kInvalidConfig, "drawer: parameter out of range");
  }
}

PullPlan plan_pull(const DrawerTarget& target, double standoff, double pull_distance,
                   double ground_z, double max_vertical_deg) {
  if (!(standoff > 0) || !(pull_distance > 0)) {
    throw Error(ErrorCode::kInvalidArgument, "standoff and pull distance must be positive");
  }
  const Vec3 a = target.axis.normalized();
  if (std::abs(a.z()) > std::cos(max_vertical_deg * std::numbers::pi / 180.0)) {
    throw Error(ErrorCode::kInvalidAxis, "axis of motion is too close to vertical");
  }
  const Vec3 horizontal = Vec3(a.x(), a.y(), 0.0).normalized();
  PullPlan plan;
  plan.axis = horizontal;
  const Vec3 body = target.handle_center + standoff * horizontal;
  plan.body_pose = Pose::from_yaw(std::atan2(-horizontal.y(), -horizontal.x()),
                                  Vec3(body.x(), body.y(), ground_z));
  plan.pull_start = target.handle_center;
  plan.pull_end = target.handle_center + pull_distance * horizontal;
  return plan;
}

std::vector<ViewTarget> process_frame(const DetectionFrame& frame, const DrawerConfig& config,
                                      std::uint64_t seed) {
  const auto handles = frame.of_class(DetectionClass::kHandle);
  const auto drawers = frame.of_class(DetectionClass::kDrawer);
  const auto pairs = match_handles_to_drawers(handles, drawers, config.match);
  std::vector<ViewTarget> out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    try {
      ViewTarget v;
      v.handle_center = handle_center_3d(pairs[i], frame);
      const AxisEstimate axis =
          estimate_axis(pairs[i], frame, config.ransac, derive_seed(seed, i));
      v.axis = axis.axis;
      v.inliers = axis.inliers;
      v.confidence = pairs[i].handle.confidence;
      out.push_back(v);
    } catch (const Error& e) {
      const ErrorCode c = e.code();
      if (c != ErrorCode::kMissingDepth && c != ErrorCode::kDegenerateInput &&
          c != ErrorCode::kNoPlaneFound) {
        throw;
      }
    }
  }
  return out;
}

std::vector<DrawerTarget> detect_drawers(std::span<const DetectionFrame> frames,
                                         const DrawerConfig& config, std::uint64_t seed) {
  std::vector<ViewTarget> views;
  for (std::size_t f = 0; f < frames.size(); ++f) {
    const auto v = process_frame(frames[f], config, derive_seed(seed, f));
    views.insert(views.end(), v.begin(), v.end());
  }
  return fuse_views(views, config.cluster_radius);
}

DrawerTarget refine_target(const DrawerTarget& initial, const DetectionFrame& close_frame,
                           const DrawerConfig& config, std::uint64_t seed) {
  const auto views = process_frame(close_frame, config, seed);
  const ViewTarget* best = nullptr;
  double best_dist = 0;
  for (const ViewTarget& v : views) {
    const double d = (v.handle_center - initial.handle_center).norm();
    if (d <= config.gate_radius && (!best || d < best_dist)) {
      best_dist = d;
      best = &v;
    }
  }
  DrawerTarget out = initial;
  out.refined = false;
  if (best) {
    out.handle_center = best->handle_center;
    out.axis = best->axis;
    out.plane_inliers = best->inliers;
    out.supporting_views = initial.supporting_views + 1;
    out.refined = true;
  }
  return out;
}

}  // namespace mmplan
