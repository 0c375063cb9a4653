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
#include <string>

#include <nlohmann/json.hpp>

#include "mmplan/sim/episode.hpp"

namespace mmplan {

// Top-level run configuration: the nested pipeline blocks plus run metadata.
struct RunConfig {
  sim::PipelineConfig pipeline;
  std::uint64_t seed = 0;
  std::string output_dir;
};

// Overlays `doc` on the defaults. Unknown keys and wrong types raise
// kInvalidConfig naming the dotted key path.
RunConfig run_config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const RunConfig& config);

nlohmann::json to_json(const NavConfig& c);
nlohmann::json to_json(const OptimizerWeights& c);
nlohmann::json to_json(const GraspConfig& c);
nlohmann::json to_json(const DrawerConfig& c);
nlohmann::json to_json(const sim::SimConfig& c);
nlohmann::json to_json(const sim::NoiseModel& c);

}  // namespace mmplan
