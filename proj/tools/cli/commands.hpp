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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmplan/config.hpp"

namespace mmplan::cli {

// Stable process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 1,          // unreadable or invalid input, config or spec
  kExitNoEmbeddings = 2,
  kExitLocalization = 3,
  kExitGraspFilter = 4,
  kExitNavigation = 5,
};

struct Options {
  std::filesystem::path scene;      // PLY cloud, or scene spec JSON for simulate
  std::filesystem::path instances;
  std::filesystem::path query;      // JSON: [floats] or {"embedding": [floats]}
  std::vector<std::filesystem::path> grasps;
  std::vector<std::filesystem::path> frames;
  std::filesystem::path config;
  std::vector<std::string> overrides;  // dotted.key=json_value
  std::optional<std::uint64_t> seed;
  std::size_t episodes = 1;
  std::string task;                    // simulate: grasp | search
  std::filesystem::path out;
};

struct CommandResult {
  int exit_code = kExitOk;
  nlohmann::json report;
  std::string message;  // human-readable diagnostic for stderr
};

// Config file, then --set overrides, then --seed and --out.
RunConfig resolve_config(const Options& opts);

// Applies "a.b.c=value" to doc; value is parsed as JSON, or taken as a
// string when it is not valid JSON.
void apply_override(nlohmann::json& doc, const std::string& assignment);

std::vector<double> read_query_embedding(const std::filesystem::path& path);

CommandResult cmd_query(const Options& opts);
CommandResult cmd_plan_grasp(const Options& opts);
CommandResult cmd_match_drawers(const Options& opts);
// Writes episodes.ndjson and summary.json under opts.out when set; the
// returned report is the summary.
CommandResult cmd_simulate(const Options& opts);

}  // namespace mmplan::cli
