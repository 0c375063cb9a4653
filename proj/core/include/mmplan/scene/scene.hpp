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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mmplan/geometry/kdtree.hpp"
#include "mmplan/geometry/types.hpp"

namespace mmplan {

struct InstanceMask {
  int id = 0;
  std::string label;
  double confidence = 1.0;
  std::vector<std::size_t> point_indices;
  std::optional<std::vector<double>> embedding;  // unit length, scene dimension
};

struct AlignedBox {
  Vec3 min = Vec3::Zero();
  Vec3 max = Vec3::Zero();

  double distance_to(const Vec3& p) const {
    return (p - p.cwiseMax(min).cwiseMin(max)).norm();
  }
  bool contains(const Vec3& p) const {
    return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
  }
};

using Rgb = std::array<std::uint8_t, 3>;

struct SceneOptions {
  // Points with z < floor_z + floor_slab count as floor for body clearance.
  double floor_slab = 0.02;
};

// Pre-scanned environment: points, optional colours and disjoint instance
// masks. Validated on construction and immutable afterwards.
class PointCloudScene {
 public:
  // Throws kInvalidIndex, kOverlappingInstances, kDimensionMismatch or
  // kInvalidArgument naming the offending instance id.
  PointCloudScene(std::vector<Vec3> points, std::vector<Rgb> colors,
                  std::vector<InstanceMask> instances, std::size_t embedding_dim,
                  SceneOptions options = {});

  const std::vector<Vec3>& points() const { return points_; }
  const std::vector<Rgb>& colors() const { return colors_; }
  const std::vector<InstanceMask>& instances() const { return instances_; }
  std::size_t embedding_dim() const { return embedding_dim_; }
  const AlignedBox& bounds() const { return bounds_; }
  const SceneOptions& options() const { return options_; }

  double floor_z() const { return bounds_.min.z(); }
  bool is_floor(std::size_t point) const {
    return points_[point].z() < floor_z() + options_.floor_slab;
  }

  // Instance id owning `point`, or -1.
  int owner(std::size_t point) const { return owner_[point]; }

  const InstanceMask* find_instance(int id) const;
  // Throws kNotFound.
  const InstanceMask& instance(int id) const;

  Vec3 centroid(int id) const;
  AlignedBox instance_bounds(int id) const;
  std::vector<Vec3> instance_points(int id) const;

  const KdTree& index() const { return index_; }
  // Same points with the floor slab removed.
  const KdTree& index_above_floor() const { return index_above_floor_; }

 private:
  std::vector<Vec3> points_;
  std::vector<Rgb> colors_;
  std::vector<InstanceMask> instances_;
  std::size_t embedding_dim_;
  SceneOptions options_;
  AlignedBox bounds_;
  std::vector<int> owner_;
  KdTree index_;
  KdTree index_above_floor_;
};

struct QueryResult {
  int instance_id = 0;
  double similarity = 0;  // cosine, [-1, 1]
  Vec3 centroid = Vec3::Zero();
};

// Instances carrying an embedding ranked by cosine similarity to `query`
// (descending, ties by ascending id).
// Throws kUnsupportedQuery when no instance has an embedding and
// kDimensionMismatch when the query has the wrong length.
std::vector<QueryResult> query_instance(const PointCloudScene& scene,
                                        std::span<const double> query);

struct IsolatedObject {
  std::vector<Vec3> object_points;
  std::vector<Vec3> environment_points;
};

// Splits out the instance's points plus every other point within `padding`
// of the instance's bounding box. padding may be +infinity.
IsolatedObject isolate_object(const PointCloudScene& scene, int instance_id,
                              double padding);

// Distance from p to the nearest scene point not owned by exclude_instance
// (and not in the floor slab when exclude_floor). Throws kEmptyScene when
// nothing is left after exclusion.
double distance_to_obstacles(const PointCloudScene& scene, const Vec3& p,
                             std::optional<int> exclude_instance,
                             bool exclude_floor = false);

}  // namespace mmplan
