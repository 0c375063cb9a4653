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

#include "mmplan/scene/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "mmplan/error.hpp"

namespace mmplan {
namespace {

Error parse_error(const std::string& what) { return Error(ErrorCode::kParse, what); }

}  // namespace

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(path.string() + ": " + e.what());
  }
}

PlyCloud parse_ply(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next_line() || line != "ply") throw parse_error("PLY: missing magic line");

  struct Element {
    std::string name;
    std::size_t count = 0;
    std::vector<std::string> properties;
    std::vector<bool> is_float;
    bool has_list = false;
  };
  std::vector<Element> elements;
  bool ascii = false;
  while (true) {
    if (!next_line()) throw parse_error("PLY: header not terminated");
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw == "end_header") break;
    if (kw == "comment" || kw == "obj_info" || kw.empty()) continue;
    if (kw == "format") {
      std::string fmt;
      ls >> fmt;
      ascii = fmt == "ascii";
    } else if (kw == "element") {
      Element e;
      long long count = -1;
      ls >> e.name >> count;
      if (count < 0) throw parse_error("PLY line " + std::to_string(line_no) + ": bad element");
      e.count = static_cast<std::size_t>(count);
      elements.push_back(std::move(e));
    } else if (kw == "property") {
      if (elements.empty()) throw parse_error("PLY: property before element");
      std::string type;
      ls >> type;
      if (type == "list") {
        elements.back().has_list = true;
        continue;
      }
      std::string name;
      ls >> name;
      elements.back().properties.push_back(name);
      elements.back().is_float.push_back(type == "float" || type == "float32");
    } else {
      throw parse_error("PLY line " + std::to_string(line_no) + ": unknown keyword '" + kw + "'");
    }
  }
  if (!ascii) throw parse_error("PLY: only ascii format is supported");
  if (elements.empty() || elements.front().name != "vertex") {
    throw parse_error("PLY: first element must be 'vertex'");
  }
  const Element& vert = elements.front();
  if (vert.has_list) throw parse_error("PLY: list properties on vertices are not supported");
  auto find = [&](const char* name) -> int {
    for (std::size_t i = 0; i < vert.properties.size(); ++i) {
      if (vert.properties[i] == name) return static_cast<int>(i);
    }
    return -1;
  };
  const int ix = find("x"), iy = find("y"), iz = find("z");
  const int ir = find("red"), ig = find("green"), ib = find("blue");
  if (ix < 0 || iy < 0 || iz < 0) throw parse_error("PLY: vertex needs x, y, z");
  const bool has_color = ir >= 0 && ig >= 0 && ib >= 0;

  PlyCloud cloud;
  cloud.points.reserve(vert.count);
  if (has_color) cloud.colors.reserve(vert.count);
  std::vector<double> values(vert.properties.size());
  for (std::size_t v = 0; v < vert.count; ++v) {
    if (!next_line()) throw parse_error("PLY: expected " + std::to_string(vert.count) +
                                        " vertices, file ended after " + std::to_string(v));
    std::istringstream ls(line);
    for (std::size_t p = 0; p < values.size(); ++p) {
      if (!(ls >> values[p])) {
        throw parse_error("PLY line " + std::to_string(line_no) + ": too few values");
      }
      // float properties are narrowed so float-valued data round-trips exactly.
      if (vert.is_float[p]) values[p] = static_cast<float>(values[p]);
    }
    cloud.points.emplace_back(values[ix], values[iy], values[iz]);
    if (has_color) {
      Rgb c{};
      const int idx[3] = {ir, ig, ib};
      for (int k = 0; k < 3; ++k) {
        const double val = values[idx[k]];
        if (val < 0 || val > 255) {
          throw parse_error("PLY line " + std::to_string(line_no) + ": colour out of range");
        }
        c[k] = static_cast<std::uint8_t>(val);
      }
      cloud.colors.push_back(c);
    }
  }
  return cloud;
}

PlyCloud read_ply(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path.string());
  try {
    return parse_ply(in);
  } catch (const Error& e) {
    throw parse_error(path.string() + ": " + e.what());
  }
}

void write_ply(const std::filesystem::path& path, const PlyCloud& cloud) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path.string());
  const bool color = !cloud.colors.empty();
  out << "ply\nformat ascii 1.0\nelement vertex " << cloud.points.size()
      << "\nproperty float x\nproperty float y\nproperty float z\n";
  if (color) out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  out << "end_header\n";
  char buf[128];
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    const Vec3& p = cloud.points[i];
    int n = std::snprintf(buf, sizeof(buf), "%.9g %.9g %.9g", static_cast<float>(p.x()),
                          static_cast<float>(p.y()), static_cast<float>(p.z()));
    out.write(buf, n);
    if (color) {
      n = std::snprintf(buf, sizeof(buf), " %u %u %u", cloud.colors[i][0],
                        cloud.colors[i][1], cloud.colors[i][2]);
      out.write(buf, n);
    }
    out << '\n';
  }
}

InstancesFile parse_instances(const nlohmann::json& doc) {
  InstancesFile file;
  if (!doc.is_object()) throw parse_error("instances: top level must be an object");
  if (!doc.contains("embedding_dim") || !doc["embedding_dim"].is_number_unsigned()) {
    throw parse_error("instances: missing or invalid 'embedding_dim'");
  }
  file.embedding_dim = doc["embedding_dim"].get<std::size_t>();
  if (!doc.contains("instances") || !doc["instances"].is_array()) {
    throw parse_error("instances: missing 'instances' array");
  }
  std::size_t record = 0;
  for (const auto& item : doc["instances"]) {
    const std::string where = "instances[" + std::to_string(record++) + "]";
    try {
      InstanceMask m;
      m.id = item.at("id").get<int>();
      m.label = item.at("label").get<std::string>();
      m.confidence = item.at("confidence").get<double>();
      m.point_indices = item.at("point_indices").get<std::vector<std::size_t>>();
      if (item.contains("embedding") && !item["embedding"].is_null()) {
        m.embedding = item["embedding"].get<std::vector<double>>();
      }
      file.instances.push_back(std::move(m));
    } catch (const nlohmann::json::exception& e) {
      throw parse_error(where + ": " + e.what());
    }
  }
  return file;
}

nlohmann::json instances_to_json(const InstancesFile& file) {
  nlohmann::json list = nlohmann::json::array();
  for (const InstanceMask& m : file.instances) {
    list.push_back({{"id", m.id},
                    {"label", m.label},
                    {"confidence", m.confidence},
                    {"point_indices", m.point_indices},
                    {"embedding", m.embedding ? nlohmann::json(*m.embedding) : nlohmann::json()}});
  }
  return {{"embedding_dim", file.embedding_dim}, {"instances", std::move(list)}};
}

PointCloudScene load_scene(const std::filesystem::path& cloud_path,
                           const std::filesystem::path& instances_path,
                           SceneOptions options) {
  PlyCloud cloud = read_ply(cloud_path);
  InstancesFile inst;
  try {
    inst = parse_instances(read_json_file(instances_path));
  } catch (const Error& e) {
    throw Error(e.code(), instances_path.string() + ": " + e.what());
  }
  return PointCloudScene(std::move(cloud.points), std::move(cloud.colors),
                         std::move(inst.instances), inst.embedding_dim, options);
}

void save_scene(const PointCloudScene& scene, const std::filesystem::path& cloud_path,
                const std::filesystem::path& instances_path) {
  write_ply(cloud_path, PlyCloud{scene.points(), scene.colors()});
  std::ofstream out(instances_path);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + instances_path.string());
  out << instances_to_json({scene.embedding_dim(), scene.instances()}).dump(1) << '\n';
}

}  // namespace mmplan
