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

#include "mmplan/geometry/kdtree.hpp"

namespace mmplan {

// Distance from p to the closed segment [a, b].
double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b);

// True iff no accepted obstacle lies within `clearance` of the segment
// (from, to). Obstacles within `target_exclusion` of `to` are ignored, as
// are ids rejected by `accept`. A zero-length segment is always visible.
bool line_of_sight(const Vec3& from, const Vec3& to, const KdTree& obstacles,
                   double clearance, double target_exclusion,
                   const KdTree::Filter& accept = {});

}  // namespace mmplan
