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

#include "mmplan/geometry/sampling.hpp"

#include <limits>
#include <string>

#include "mmplan/error.hpp"

namespace mmplan {

std::vector<std::size_t> farthest_point_sample(std::span<const Vec3> candidates,
                                               std::size_t k,
                                               std::size_t start_index) {
  const std::size_t n = candidates.size();
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kOutOfBounds, "k=" + std::to_string(k) +
                                             " outside [1, " + std::to_string(n) + "]");
  }
  if (start_index >= n) {
    throw Error(ErrorCode::kOutOfBounds,
                "start index " + std::to_string(start_index) + " out of range");
  }

  std::vector<std::size_t> picked{start_index};
  picked.reserve(k);
  std::vector<double> min_dist(n, std::numeric_limits<double>::infinity());
  std::vector<bool> taken(n, false);
  taken[start_index] = true;

  std::size_t last = start_index;
  while (picked.size() < k) {
    std::size_t next = n;
    double next_dist = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      const double d = (candidates[i] - candidates[last]).norm();
      if (d < min_dist[i]) min_dist[i] = d;
      if (min_dist[i] > next_dist) {  // strict: lowest index wins ties
        next_dist = min_dist[i];
        next = i;
      }
    }
    taken[next] = true;
    picked.push_back(next);
    last = next;
  }
  return picked;
}

}  // namespace mmplan
