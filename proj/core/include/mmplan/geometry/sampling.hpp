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
#include <span>
#include <vector>

#include "mmplan/geometry/types.hpp"

namespace mmplan {

// Greedy max-min (farthest point) selection of k indices starting at
// start_index. Euclidean distance; ties go to the lowest index.
// Throws kOutOfBounds unless 1 <= k <= candidates.size() and start_index is
// a valid index.
std::vector<std::size_t> farthest_point_sample(std::span<const Vec3> candidates,
                                               std::size_t k,
                                               std::size_t start_index);

}  // namespace mmplan
