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

#include "mmplan/grasp/io.hpp"

#include <string>
#include <vector>

#include "mmplan/error.hpp"
#include "mmplan/scene/io.hpp"

namespace mmplan {
namespace {

std::vector<double> numbers(const nlohmann::json& v, std::size_t n, const std::string& what) {
  if (!v.is_array() || v.size() != n) {
    throw Error(ErrorCode::kParse, what + ": expected " + std::to_string(n) + " numbers");
  }
  return v.get<std::vector<double>>();
}

std::vector<double> row_major(const Mat3& r) {
  std::vector<double> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out.push_back(r(i, j));
  return out;
}

}  // namespace

GraspBatch parse_grasp_batch(const nlohmann::json& doc) {
  GraspBatch batch;
  try {
    batch.rotation = Pose::rotation_from_row_major(numbers(doc.at("rotation"), 9, "rotation"));
    if (!is_proper_rotation(batch.rotation)) {
      throw Error(ErrorCode::kInvalidRotation, "batch rotation is not a proper rotation");
    }
    std::size_t i = 0;
    for (const auto& c : doc.at("candidates")) {
      const std::string where = "candidates[" + std::to_string(i++) + "]";
      GraspCandidate g;
      const auto t = numbers(c.at("translation"), 3, where + ".translation");
      const Mat3 r = Pose::rotation_from_row_major(numbers(c.at("rotation"), 9, where + ".rotation"));
      if (!is_proper_rotation(r)) {
        throw Error(ErrorCode::kInvalidRotation, where + ": rotation is not a proper rotation");
      }
      g.pose.rotation = r;
      g.pose.translation = Vec3(t[0], t[1], t[2]);
      g.width = c.at("width").get<double>();
      g.score = c.at("score").get<double>();
      if (!(g.width >= 0)) throw Error(ErrorCode::kParse, where + ": negative width");
      batch.candidates.push_back(g);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("grasp batch: ") + e.what());
  }
  return batch;
}

GraspBatch read_grasp_batch(const std::filesystem::path& path) {
  try {
    return parse_grasp_batch(read_json_file(path));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

nlohmann::json grasp_to_json(const GraspCandidate& g) {
  return {{"translation", {g.pose.translation.x(), g.pose.translation.y(), g.pose.translation.z()}},
          {"rotation", row_major(g.pose.rotation)},
          {"width", g.width},
          {"score", g.score}};
}

nlohmann::json grasp_batch_to_json(const GraspBatch& batch) {
  nlohmann::json list = nlohmann::json::array();
  for (const GraspCandidate& g : batch.candidates) list.push_back(grasp_to_json(g));
  return {{"rotation", row_major(batch.rotation)}, {"candidates", std::move(list)}};
}

}  // namespace mmplan
