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
#include <functional>
#include <optional>
#include <vector>

#include "mmplan/geometry/types.hpp"

namespace mmplan {

// Static 3D k-d tree for exact nearest-neighbour and range queries.
// Immutable after construction, so concurrent queries are safe.
class KdTree {
 public:
  struct Neighbor {
    std::size_t index = 0;  // caller-visible id (see constructor)
    double distance = 0;
  };

  // Returns false to reject a candidate (by id).
  using Filter = std::function<bool(std::size_t)>;

  KdTree() = default;

  // `ids` maps internal positions to the ids reported by queries; when empty
  // the ids are 0..points.size()-1.
  explicit KdTree(std::vector<Vec3> points, std::vector<std::size_t> ids = {});

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  std::optional<Neighbor> nearest(const Vec3& query,
                                  const Filter& accept = {}) const;

  // Visits every point inside the closed box [lo, hi]. The visitor returns
  // false to stop early; for_each_in_box returns false if it was stopped.
  bool for_each_in_box(
      const Vec3& lo, const Vec3& hi,
      const std::function<bool(std::size_t id, const Vec3& p)>& visit) const;

  std::vector<std::size_t> radius_search(const Vec3& query, double radius) const;

 private:
  struct Node {
    Vec3 lo;
    Vec3 hi;
    std::size_t begin = 0;
    std::size_t end = 0;
    int left = -1;
    int right = -1;
  };

  int build(std::size_t begin, std::size_t end);
  void nearest_rec(int node, const Vec3& q, const Filter& accept,
                   std::optional<Neighbor>& best, double& best_sq) const;
  bool box_rec(int node, const Vec3& lo, const Vec3& hi,
               const std::function<bool(std::size_t, const Vec3&)>& visit) const;

  std::vector<Vec3> points_;        // reordered during build
  std::vector<std::size_t> ids_;    // parallel to points_
  std::vector<Node> nodes_;
};

}  // namespace mmplan
