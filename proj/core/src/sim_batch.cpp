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

#include "mmplan/sim/batch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "mmplan/error.hpp"
#include "mmplan/rng.hpp"

namespace mmplan::sim {
namespace {

using nlohmann::json;

constexpr double kZ95 = 1.959963984540054;

json proportion_json(const Proportion& p) {
  const auto [lo, hi] = p.wilson();
  return {{"successes", p.successes}, {"trials", p.trials}, {"rate", p.rate()},
          {"ci95", {lo, hi}}};
}

std::optional<std::size_t> tier_index(const json& details, const char* key) {
  if (!details.contains(key)) return std::nullopt;
  return static_cast<std::size_t>(parse_tier(details.at(key).get<std::string>()));
}

}  // namespace

std::pair<double, double> Proportion::wilson() const {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = rate();
  const double z2 = kZ95 * kZ95;
  const double denom = 1 + z2 / n;
  const double center = (p + z2 / (2 * n)) / denom;
  const double half = kZ95 * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double Proportion::half_width() const {
  if (trials == 0) return 1.0;
  const double p = rate();
  return kZ95 * std::sqrt(p * (1 - p) / static_cast<double>(trials));
}

json to_json(const BatchSummary& s) {
  json failures = json::object();
  for (std::size_t i = 0; i < s.stage_failures.size(); ++i) {
    failures[std::string(to_string(static_cast<Stage>(i)))] = s.stage_failures[i];
  }
  json doc = {{"task", std::string(to_string(s.task))},
              {"episodes", s.episodes},
              {"success", proportion_json(s.overall)},
              {"stage_failures", std::move(failures)}};
  if (s.task == Task::kGrasp) {
    json tiers = json::object();
    json cells = json::object();
    for (std::size_t t = 0; t < 3; ++t) {
      const std::string name(to_string(static_cast<Tier>(t)));
      tiers[name] = proportion_json(s.by_object_tier[t]);
      for (std::size_t p = 0; p < 3; ++p) {
        cells[name][std::string(to_string(static_cast<Tier>(p)))] =
            proportion_json(s.by_tier_cell[t][p]);
      }
    }
    doc["by_object_tier"] = std::move(tiers);
    doc["by_tier_cell"] = std::move(cells);
  }
  return doc;
}

BatchSummary summarize(Task task, const std::vector<EpisodeReport>& reports) {
  BatchSummary s;
  s.task = task;
  s.episodes = reports.size();
  for (const EpisodeReport& r : reports) {
    ++s.overall.trials;
    if (r.success) ++s.overall.successes;
    if (const auto f = r.failed_stage()) ++s.stage_failures[static_cast<std::size_t>(*f)];
    const auto object = tier_index(r.details, "grasp_tier");
    if (task != Task::kGrasp || !object) continue;
    Proportion& tier = s.by_object_tier[*object];
    ++tier.trials;
    if (r.success) ++tier.successes;
    if (const auto placement = tier_index(r.details, "placement")) {
      Proportion& cell = s.by_tier_cell[*object][*placement];
      ++cell.trials;
      if (r.success) ++cell.successes;
    }
  }
  return s;
}

BatchResult run_batch(Task task, const SceneSpec& spec, const PipelineConfig& config,
                      std::size_t episodes, std::uint64_t seed) {
  spec.validate();
  config.validate();
  if (task == Task::kGrasp && spec.objects.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "grasp batches need at least one object");
  }
  if (task == Task::kSearch && spec.search_item.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "search batches need 'search_item'");
  }
  BatchResult result;
  result.reports.resize(episodes);
  auto run_one = [&](std::size_t i) {
    const std::uint64_t scene_seed = derive_seed(seed, static_cast<std::uint64_t>(i));
    const SyntheticScene scene = generate_scene(spec, scene_seed);
    const std::uint64_t episode_seed = derive_seed(scene_seed, "episode");
    if (task == Task::kGrasp) {
      const std::string& query = spec.objects[i % spec.objects.size()].label;
      result.reports[i] = run_grasp_episode(scene, query, config, episode_seed);
    } else {
      result.reports[i] = run_search_episode(scene, spec.search_item, config, episode_seed);
    }
  };

  // Episodes are independent and write to their own slot, so the output does
  // not depend on the thread count.
  const std::size_t workers =
      std::min<std::size_t>(episodes, std::max(1u, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::size_t error_index = episodes;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < episodes; i = next++) {
          try {
            run_one(i);
          } catch (...) {
            // Report the lowest failing episode whatever the scheduling.
            const std::lock_guard lock(error_mutex);
            if (i < error_index) {
              error_index = i;
              error = std::current_exception();
            }
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
  result.summary = summarize(task, result.reports);
  return result;
}

}  // namespace mmplan::sim
