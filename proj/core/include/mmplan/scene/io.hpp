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
#include <vector>

#include <nlohmann/json.hpp>

#include "mmplan/scene/scene.hpp"

namespace mmplan {

struct PlyCloud {
  std::vector<Vec3> points;
  std::vector<Rgb> colors;  // empty when the file has no colour properties
};

// ASCII PLY with vertex properties x y z and optional red green blue.
// Other elements after the vertices are skipped.
PlyCloud read_ply(const std::filesystem::path& path);
PlyCloud parse_ply(std::istream& in);

// Coordinates are written as 32-bit floats; values representable as float
// round-trip exactly.
void write_ply(const std::filesystem::path& path, const PlyCloud& cloud);

struct InstancesFile {
  std::size_t embedding_dim = 0;
  std::vector<InstanceMask> instances;
};

InstancesFile parse_instances(const nlohmann::json& doc);
nlohmann::json instances_to_json(const InstancesFile& file);

PointCloudScene load_scene(const std::filesystem::path& cloud_path,
                           const std::filesystem::path& instances_path,
                           SceneOptions options = {});

void save_scene(const PointCloudScene& scene,
                const std::filesystem::path& cloud_path,
                const std::filesystem::path& instances_path);

// Reads a whole JSON document; throws kParse with the file name on failure.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace mmplan
