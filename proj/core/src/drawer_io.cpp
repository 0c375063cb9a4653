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

#include "mmplan/drawer/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <string>

#include "mmplan/error.hpp"
#include "mmplan/scene/io.hpp"

namespace mmplan {
namespace {

std::uint32_t to_little(std::uint32_t v) {
  if constexpr (std::endian::native == std::endian::little) return v;
  return ((v & 0xffu) << 24) | ((v & 0xff00u) << 8) | ((v >> 8) & 0xff00u) | (v >> 24);
}

DetectionClass parse_class(const std::string& s, const std::string& where) {
  if (s == "handle") return DetectionClass::kHandle;
  if (s == "drawer") return DetectionClass::kDrawer;
  throw Error(ErrorCode::kParse, where + ": unknown class '" + s + "'");
}

}  // namespace

DepthImage read_depth_file(const std::filesystem::path& path, int width, int height) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw Error(ErrorCode::kParse, "cannot open depth file " + path.string());
  const auto bytes = static_cast<std::size_t>(in.tellg());
  const std::size_t expected = static_cast<std::size_t>(width) * height * sizeof(float);
  if (bytes != expected) {
    throw Error(ErrorCode::kParse, path.string() + ": depth file has " + std::to_string(bytes) +
                                       " bytes, expected " + std::to_string(expected) + " (" +
                                       std::to_string(width) + "x" + std::to_string(height) +
                                       " float32)");
  }
  in.seekg(0);
  DepthImage depth(width, height);
  std::vector<std::uint32_t> raw(depth.data.size());
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(expected));
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const std::uint32_t v = to_little(raw[i]);
    std::memcpy(&depth.data[i], &v, sizeof(float));
    if (!(depth.data[i] >= 0)) {
      throw Error(ErrorCode::kParse, path.string() + ": negative or NaN depth at pixel " +
                                         std::to_string(i));
    }
  }
  return depth;
}

void write_depth_file(const std::filesystem::path& path, const DepthImage& depth) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path.string());
  std::vector<std::uint32_t> raw(depth.data.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::uint32_t v;
    std::memcpy(&v, &depth.data[i], sizeof(float));
    raw[i] = to_little(v);
  }
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size() * sizeof(std::uint32_t)));
}

DetectionFrame read_frame(const std::filesystem::path& path) {
  const nlohmann::json doc = read_json_file(path);
  DetectionFrame frame;
  std::filesystem::path depth_path;
  try {
    const auto& k = doc.at("intrinsics");
    frame.intrinsics.fx = k.at("fx").get<double>();
    frame.intrinsics.fy = k.at("fy").get<double>();
    frame.intrinsics.cx = k.at("cx").get<double>();
    frame.intrinsics.cy = k.at("cy").get<double>();
    frame.intrinsics.width = k.at("width").get<int>();
    frame.intrinsics.height = k.at("height").get<int>();
    frame.cam_pose = Pose::from_row_major(doc.at("cam_pose").get<std::vector<double>>());
    depth_path = doc.at("depth_file").get<std::string>();
    std::size_t i = 0;
    for (const auto& d : doc.at("detections")) {
      const std::string where = path.string() + ": detections[" + std::to_string(i++) + "]";
      Detection2D det;
      det.cls = parse_class(d.at("class").get<std::string>(), where);
      const auto b = d.at("bbox").get<std::vector<double>>();
      if (b.size() != 4) throw Error(ErrorCode::kParse, where + ": bbox needs 4 values");
      det.bbox = {b[0], b[1], b[2], b[3]};
      det.confidence = d.at("confidence").get<double>();
      if (!det.bbox.valid()) throw Error(ErrorCode::kParse, where + ": bbox min > max");
      if (!(det.confidence >= 0 && det.confidence <= 1)) {
        throw Error(ErrorCode::kParse, where + ": confidence outside [0,1]");
      }
      frame.detections.push_back(det);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) throw;
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
  try {
    frame.intrinsics.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
  if (depth_path.is_relative()) depth_path = path.parent_path() / depth_path;
  frame.depth = read_depth_file(depth_path, frame.intrinsics.width, frame.intrinsics.height);
  return frame;
}

void write_frame(const DetectionFrame& frame, const std::filesystem::path& json_path,
                 const std::filesystem::path& depth_path) {
  nlohmann::json dets = nlohmann::json::array();
  for (const Detection2D& d : frame.detections) {
    dets.push_back({{"class", std::string(to_string(d.cls))},
                    {"bbox", {d.bbox.xmin, d.bbox.ymin, d.bbox.xmax, d.bbox.ymax}},
                    {"confidence", d.confidence}});
  }
  const auto pose = frame.cam_pose.to_row_major();
  const CameraIntrinsics& k = frame.intrinsics;
  std::filesystem::path rel = depth_path;
  if (depth_path.parent_path() == json_path.parent_path()) rel = depth_path.filename();
  const nlohmann::json doc = {
      {"intrinsics",
       {{"fx", k.fx}, {"fy", k.fy}, {"cx", k.cx}, {"cy", k.cy}, {"width", k.width}, {"height", k.height}}},
      {"cam_pose", std::vector<double>(pose.begin(), pose.end())},
      {"depth_file", rel.string()},
      {"detections", std::move(dets)}};
  std::ofstream out(json_path);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + json_path.string());
  out << doc.dump(1) << '\n';
  write_depth_file(depth_path, frame.depth);
}

nlohmann::json target_to_json(const DrawerTarget& t) {
  return {{"handle_center", {t.handle_center.x(), t.handle_center.y(), t.handle_center.z()}},
          {"axis", {t.axis.x(), t.axis.y(), t.axis.z()}},
          {"supporting_views", t.supporting_views},
          {"plane_inliers", t.plane_inliers},
          {"confidence", t.confidence},
          {"refined", t.refined}};
}

}  // namespace mmplan
