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

#include "mmplan/drawer/drawer.hpp"

namespace mmplan {

// Little-endian float32, row-major. Throws kParse when the file size does not
// match width * height.
DepthImage read_depth_file(const std::filesystem::path& path, int width, int height);
void write_depth_file(const std::filesystem::path& path, const DepthImage& depth);

// Frame JSON; a relative depth_file resolves against the frame file's folder.
DetectionFrame read_frame(const std::filesystem::path& path);
void write_frame(const DetectionFrame& frame, const std::filesystem::path& json_path,
                 const std::filesystem::path& depth_path);

nlohmann::json target_to_json(const DrawerTarget& target);

}  // namespace mmplan
