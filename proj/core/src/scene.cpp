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

#include "mmplan/scene/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "mmplan/error.hpp"

namespace mmplan {

PointCloudScene::PointCloudScene(std::vector<Vec3> points, std::vector<Rgb> colors,
                                 std::vector<InstanceMask> instances,
                                 std::size_t embedding_dim, SceneOptions options)
    : points_(std::move(points)),
      colors_(std::move(colors)),
      instances_(std::move(instances)),
      embedding_dim_(embedding_dim),
      options_(options),
      owner_(points_.size(), -1) {
  if (!colors_.empty() && colors_.size() != points_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "colour count does not match point count");
  }
  std::map<int, std::size_t> seen_ids;
  for (const InstanceMask& inst : instances_) {
    const std::string who = "instance " + std::to_string(inst.id);
    if (!seen_ids.emplace(inst.id, 0).second) {
      throw Error(ErrorCode::kInvalidArgument, who + ": duplicate id");
    }
    if (inst.point_indices.empty()) {
      throw Error(ErrorCode::kInvalidArgument, who + ": empty mask");
    }
    if (!(inst.confidence >= 0 && inst.confidence <= 1)) {
      throw Error(ErrorCode::kInvalidArgument, who + ": confidence outside [0,1]");
    }
    for (std::size_t idx : inst.point_indices) {
      if (idx >= points_.size()) {
        throw Error(ErrorCode::kInvalidIndex,
                    who + ": point index " + std::to_string(idx) +
                        " out of range (" + std::to_string(points_.size()) + " points)");
      }
      if (owner_[idx] != -1) {
        throw Error(ErrorCode::kOverlappingInstances,
                    who + ": point " + std::to_string(idx) + " already owned by instance " +
                        std::to_string(owner_[idx]));
      }
      owner_[idx] = inst.id;
    }
    if (inst.embedding) {
      if (inst.embedding->size() != embedding_dim_) {
        throw Error(ErrorCode::kDimensionMismatch,
                    who + ": embedding has " + std::to_string(inst.embedding->size()) +
                        " values, expected " + std::to_string(embedding_dim_));
      }
      double sq = 0;
      for (double v : *inst.embedding) sq += v * v;
      if (std::abs(std::sqrt(sq) - 1.0) > 1e-6) {
        throw Error(ErrorCode::kInvalidArgument, who + ": embedding is not unit length");
      }
    }
  }

  if (!points_.empty()) {
    bounds_.min = points_.front();
    bounds_.max = points_.front();
    for (const Vec3& p : points_) {
      bounds_.min = bounds_.min.cwiseMin(p);
      bounds_.max = bounds_.max.cwiseMax(p);
    }
  }

  std::vector<Vec3> above;
  std::vector<std::size_t> above_ids;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!is_floor(i)) {
      above.push_back(points_[i]);
      above_ids.push_back(i);
    }
  }
  index_ = KdTree(points_);
  index_above_floor_ = KdTree(std::move(above), std::move(above_ids));
}

const InstanceMask* PointCloudScene::find_instance(int id) const {
  for (const InstanceMask& inst : instances_) {
    if (inst.id == id) return &inst;
  }
  return nullptr;
}

const InstanceMask& PointCloudScene::instance(int id) const {
  const InstanceMask* inst = find_instance(id);
  if (!inst) throw Error(ErrorCode::kNotFound, "unknown instance " + std::to_string(id));
  return *inst;
}

Vec3 PointCloudScene::centroid(int id) const {
  const InstanceMask& inst = instance(id);
  Vec3 c = Vec3::Zero();
  for (std::size_t i : inst.point_indices) c += points_[i];
  return c / static_cast<double>(inst.point_indices.size());
}

AlignedBox PointCloudScene::instance_bounds(int id) const {
  const InstanceMask& inst = instance(id);
  AlignedBox box{points_[inst.point_indices.front()], points_[inst.point_indices.front()]};
  for (std::size_t i : inst.point_indices) {
    box.min = box.min.cwiseMin(points_[i]);
    box.max = box.max.cwiseMax(points_[i]);
  }
  return box;
}

std::vector<Vec3> PointCloudScene::instance_points(int id) const {
  const InstanceMask& inst = instance(id);
  std::vector<Vec3> out;
  out.reserve(inst.point_indices.size());
  for (std::size_t i : inst.point_indices) out.push_back(points_[i]);
  return out;
}

std::vector<QueryResult> query_instance(const PointCloudScene& scene,
                                        std::span<const double> query) {
  const bool any = std::any_of(scene.instances().begin(), scene.instances().end(),
                               [](const InstanceMask& m) { return m.embedding.has_value(); });
  if (!any) throw Error(ErrorCode::kUnsupportedQuery, "no instance carries an embedding");
  if (query.size() != scene.embedding_dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "query has " + std::to_string(query.size()) + " values, scene uses " +
                    std::to_string(scene.embedding_dim()));
  }
  double qn = 0;
  for (double v : query) qn += v * v;
  qn = std::sqrt(qn);
  if (qn == 0) throw Error(ErrorCode::kInvalidArgument, "query embedding is zero");

  std::vector<QueryResult> out;
  for (const InstanceMask& inst : scene.instances()) {
    if (!inst.embedding) continue;
    const std::vector<double>& e = *inst.embedding;
    double dot = 0;
    double en = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      dot += e[i] * query[i];
      en += e[i] * e[i];
    }
    const double sim = std::clamp(dot / (qn * std::sqrt(en)), -1.0, 1.0);
    out.push_back({inst.id, sim, scene.centroid(inst.id)});
  }
  std::sort(out.begin(), out.end(), [](const QueryResult& a, const QueryResult& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.instance_id < b.instance_id;
  });
  return out;
}

IsolatedObject isolate_object(const PointCloudScene& scene, int instance_id,
                              double padding) {
  const InstanceMask& inst = scene.instance(instance_id);
  const AlignedBox box = scene.instance_bounds(instance_id);
  IsolatedObject out;
  out.object_points.reserve(inst.point_indices.size());
  for (std::size_t i : inst.point_indices) out.object_points.push_back(scene.points()[i]);
  for (std::size_t i = 0; i < scene.points().size(); ++i) {
    if (scene.owner(i) == instance_id) continue;
    if (box.distance_to(scene.points()[i]) <= padding) {
      out.environment_points.push_back(scene.points()[i]);
    }
  }
  return out;
}

double distance_to_obstacles(const PointCloudScene& scene, const Vec3& p,
                             std::optional<int> exclude_instance, bool exclude_floor) {
  const KdTree& index = exclude_floor ? scene.index_above_floor() : scene.index();
  KdTree::Filter accept;
  if (exclude_instance) {
    const int ex = *exclude_instance;
    accept = [&scene, ex](std::size_t id) { return scene.owner(id) != ex; };
  }
  const auto hit = index.nearest(p, accept);
  if (!hit) throw Error(ErrorCode::kEmptyScene, "no obstacle points after exclusion");
  return hit->distance;
}

}  // namespace mmplan
