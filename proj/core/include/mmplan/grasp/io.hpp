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

#include <filesystem>

#include <nlohmann/json.hpp>

#include "mmplan/grasp/grasp.hpp"

namespace mmplan {

// { "rotation": [9 row-major], "candidates": [ { "translation": [3],
//   "rotation": [9 row-major], "width": w, "score": s } ] }
// Candidate translation is the grasp centre, rotation column 0 the approach
// axis. Throws kParse or kInvalidRotation.
GraspBatch parse_grasp_batch(const nlohmann::json& doc);
GraspBatch read_grasp_batch(const std::filesystem::path& path);
nlohmann::json grasp_batch_to_json(const GraspBatch& batch);

nlohmann::json grasp_to_json(const GraspCandidate& grasp);

}  // namespace mmplan
