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

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmplan/sim/episode.hpp"

namespace mmplan::sim {

struct Proportion {
  std::size_t successes = 0;
  std::size_t trials = 0;

  double rate() const { return trials ? static_cast<double>(successes) / trials : 0.0; }
  // 95% Wilson score interval.
  std::pair<double, double> wilson() const;
  // Normal-approximation half width at 95%.
  double half_width() const;
};

struct BatchSummary {
  Task task = Task::kGrasp;
  std::size_t episodes = 0;
  Proportion overall;
  std::array<std::size_t, 4> stage_failures{};
  std::array<Proportion, 3> by_object_tier;                // grasp task only
  std::array<std::array<Proportion, 3>, 3> by_tier_cell;   // [object][placement]
};

nlohmann::json to_json(const BatchSummary& summary);

struct BatchResult {
  std::vector<EpisodeReport> reports;
  BatchSummary summary;
};

// Episode i uses scene seed derive_seed(seed, i). Grasp episodes cycle the
// queried object through spec.objects; search episodes query spec.search_item.
BatchResult run_batch(Task task, const SceneSpec& spec, const PipelineConfig& config,
                      std::size_t episodes, std::uint64_t seed);

BatchSummary summarize(Task task, const std::vector<EpisodeReport>& reports);

}  // namespace mmplan::sim
