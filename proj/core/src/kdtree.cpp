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

#include "mmplan/geometry/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mmplan/error.hpp"

namespace mmplan {
namespace {

constexpr std::size_t kLeafSize = 12;

double box_distance_sq(const Vec3& q, const Vec3& lo, const Vec3& hi) {
  double d = 0;
  for (int i = 0; i < 3; ++i) {
    const double e = q(i) < lo(i) ? lo(i) - q(i) : (q(i) > hi(i) ? q(i) - hi(i) : 0.0);
    d += e * e;
  }
  return d;
}

bool boxes_overlap(const Vec3& alo, const Vec3& ahi, const Vec3& blo,
                   const Vec3& bhi) {
  return (alo.array() <= bhi.array()).all() && (blo.array() <= ahi.array()).all();
}

}  // namespace

KdTree::KdTree(std::vector<Vec3> points, std::vector<std::size_t> ids)
    : points_(std::move(points)), ids_(std::move(ids)) {
  if (ids_.empty()) {
    ids_.resize(points_.size());
    std::iota(ids_.begin(), ids_.end(), std::size_t{0});
  } else if (ids_.size() != points_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "kd-tree ids/points size mismatch");
  }
  if (!points_.empty()) {
    nodes_.reserve(2 * points_.size() / kLeafSize + 2);
    build(0, points_.size());
  }
}

int KdTree::build(std::size_t begin, std::size_t end) {
  Node node;
  node.begin = begin;
  node.end = end;
  node.lo = points_[begin];
  node.hi = points_[begin];
  for (std::size_t i = begin + 1; i < end; ++i) {
    node.lo = node.lo.cwiseMin(points_[i]);
    node.hi = node.hi.cwiseMax(points_[i]);
  }
  const int self = static_cast<int>(nodes_.size());
  nodes_.push_back(node);
  if (end - begin <= kLeafSize) return self;

  int axis = 0;
  (node.hi - node.lo).maxCoeff(&axis);
  const std::size_t mid = begin + (end - begin) / 2;

  // Sort a permutation so ids stay attached to their points.
  std::vector<std::size_t> order(end - begin);
  std::iota(order.begin(), order.end(), begin);
  std::nth_element(order.begin(), order.begin() + (mid - begin), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return points_[a](axis) < points_[b](axis);
                   });
  std::vector<Vec3> pts(end - begin);
  std::vector<std::size_t> ids(end - begin);
  for (std::size_t i = 0; i < order.size(); ++i) {
    pts[i] = points_[order[i]];
    ids[i] = ids_[order[i]];
  }
  std::copy(pts.begin(), pts.end(), points_.begin() + begin);
  std::copy(ids.begin(), ids.end(), ids_.begin() + begin);

  const int left = build(begin, mid);
  const int right = build(mid, end);
  nodes_[self].left = left;
  nodes_[self].right = right;
  return self;
}

std::optional<KdTree::Neighbor> KdTree::nearest(const Vec3& query,
                                                const Filter& accept) const {
  std::optional<Neighbor> best;
  double best_sq = std::numeric_limits<double>::infinity();
  if (!nodes_.empty()) nearest_rec(0, query, accept, best, best_sq);
  return best;
}

void KdTree::nearest_rec(int index, const Vec3& q, const Filter& accept,
                         std::optional<Neighbor>& best, double& best_sq) const {
  const Node& node = nodes_[index];
  if (box_distance_sq(q, node.lo, node.hi) > best_sq) return;
  if (node.left < 0) {
    for (std::size_t i = node.begin; i < node.end; ++i) {
      const double d = (points_[i] - q).squaredNorm();
      // Equal distances resolve to the smaller id so results do not depend
      // on tree layout.
      if (d < best_sq || (d == best_sq && best && ids_[i] < best->index)) {
        if (accept && !accept(ids_[i])) continue;
        best_sq = d;
        best = Neighbor{ids_[i], 0.0};
      }
    }
    if (best) best->distance = std::sqrt(best_sq);
    return;
  }
  const double dl = box_distance_sq(q, nodes_[node.left].lo, nodes_[node.left].hi);
  const double dr = box_distance_sq(q, nodes_[node.right].lo, nodes_[node.right].hi);
  if (dl <= dr) {
    nearest_rec(node.left, q, accept, best, best_sq);
    nearest_rec(node.right, q, accept, best, best_sq);
  } else {
    nearest_rec(node.right, q, accept, best, best_sq);
    nearest_rec(node.left, q, accept, best, best_sq);
  }
}

bool KdTree::for_each_in_box(
    const Vec3& lo, const Vec3& hi,
    const std::function<bool(std::size_t, const Vec3&)>& visit) const {
  if (nodes_.empty()) return true;
  return box_rec(0, lo, hi, visit);
}

bool KdTree::box_rec(int index, const Vec3& lo, const Vec3& hi,
                     const std::function<bool(std::size_t, const Vec3&)>& visit) const {
  const Node& node = nodes_[index];
  if (!boxes_overlap(node.lo, node.hi, lo, hi)) return true;
  if (node.left < 0) {
    for (std::size_t i = node.begin; i < node.end; ++i) {
      const Vec3& p = points_[i];
      if ((p.array() >= lo.array()).all() && (p.array() <= hi.array()).all()) {
        if (!visit(ids_[i], p)) return false;
      }
    }
    return true;
  }
  return box_rec(node.left, lo, hi, visit) && box_rec(node.right, lo, hi, visit);
}

std::vector<std::size_t> KdTree::radius_search(const Vec3& query,
                                               double radius) const {
  std::vector<std::size_t> out;
  const Vec3 r = Vec3::Constant(radius);
  const double r_sq = radius * radius;
  for_each_in_box(query - r, query + r, [&](std::size_t id, const Vec3& p) {
    if ((p - query).squaredNorm() <= r_sq) out.push_back(id);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mmplan
