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

#include "mmplan/sim/world.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <Eigen/Geometry>

#include "mmplan/error.hpp"
#include "mmplan/rng.hpp"

namespace mmplan::sim {
namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;
constexpr double kGraspDepth = 0.015;  // grasp centre below the top face
constexpr double kPlacementGap = 0.1;

Error config_error(const std::string& what) { return Error(ErrorCode::kInvalidConfig, what); }

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& path) {
  if (!obj.is_object()) throw config_error(path + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw config_error("unknown key '" + (path.empty() ? key : path + "." + key) + "'");
    }
  }
}

template <typename T>
T get_or(const json& obj, const char* key, const std::string& path, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw config_error("invalid value for '" + path + "." + key + "'");
  }
}

Vec2 vec2_at(const json& obj, const char* key, const std::string& path) {
  const auto v = get_or<std::vector<double>>(obj, key, path, {});
  if (v.size() != 2) throw config_error("'" + path + "." + key + "' needs 2 numbers");
  return {v[0], v[1]};
}

Vec3 vec3_at(const json& obj, const char* key, const std::string& path) {
  const auto v = get_or<std::vector<double>>(obj, key, path, {});
  if (v.size() != 3) throw config_error("'" + path + "." + key + "' needs 3 numbers");
  return {v[0], v[1], v[2]};
}

Tier tier_at(const json& obj, const char* key, const std::string& path) {
  try {
    return parse_tier(get_or<std::string>(obj, key, path, ""));
  } catch (const Error&) {
    throw config_error("'" + path + "." + key + "' must be easy, medium or hard");
  }
}

Vec3 round_float(const Vec3& p) {
  return {static_cast<float>(p.x()), static_cast<float>(p.y()), static_cast<float>(p.z())};
}

// Stratified samples on the parallelogram origin + s*e1 + t*e2.
void sample_rect(const Vec3& origin, const Vec3& e1, const Vec3& e2, double density, Rng& rng,
                 std::vector<Vec3>& out) {
  const auto [n1, n2] = face_grid(e1.norm(), e2.norm(), density);
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      const double s = (i + rng.uniform()) / n1;
      const double t = (j + rng.uniform()) / n2;
      out.push_back(round_float(origin + s * e1 + t * e2));
    }
  }
}

void sample_box(const Box& box, double density, bool skip_bottom, Rng& rng,
                std::vector<Vec3>& out) {
  const Mat3 r = box.rotation();
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3;
    const int c = (a + 2) % 3;
    for (int sign : {-1, 1}) {
      if (skip_bottom && a == 2 && sign < 0) continue;
      Vec3 origin = Vec3::Zero();
      origin(a) = sign * box.half(a);
      origin(b) = -box.half(b);
      origin(c) = -box.half(c);
      Vec3 e1 = Vec3::Zero();
      Vec3 e2 = Vec3::Zero();
      e1(b) = 2 * box.half(b);
      e2(c) = 2 * box.half(c);
      sample_rect(box.center + r * origin, r * e1, r * e2, density, rng, out);
    }
  }
}

void sample_cylinder(const Cylinder& cyl, double density, Rng& rng, std::vector<Vec3>& out) {
  const double spacing = 1.0 / std::sqrt(density);
  const auto [n_theta, n_z] = face_grid(2 * kPi * cyl.radius, cyl.height, density);
  for (int i = 0; i < std::max(n_theta, 3); ++i) {
    for (int j = 0; j < n_z; ++j) {
      const double theta = 2 * kPi * (i + rng.uniform()) / std::max(n_theta, 3);
      const double z = cyl.height * (j + rng.uniform()) / n_z;
      out.push_back(round_float(cyl.base_center + Vec3(cyl.radius * std::cos(theta),
                                                       cyl.radius * std::sin(theta), z)));
    }
  }
  const int n = std::max(1, static_cast<int>(std::ceil(2 * cyl.radius / spacing)));
  const double cell = 2 * cyl.radius / n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = -cyl.radius + (i + rng.uniform()) * cell;
      const double y = -cyl.radius + (j + rng.uniform()) * cell;
      if (x * x + y * y > cyl.radius * cyl.radius) continue;
      out.push_back(round_float(cyl.base_center + Vec3(x, y, cyl.height)));
    }
  }
}

struct Footprint {
  Vec2 center;
  double radius;
};

bool fits(const std::vector<Footprint>& taken, const Footprint& f) {
  for (const Footprint& t : taken) {
    if ((t.center - f.center).norm() < t.radius + f.radius + kPlacementGap) return false;
  }
  return true;
}

Mat3 grasp_frame(const Vec3& approach, const Vec3& closing) {
  Mat3 r;
  r.col(0) = approach.normalized();
  r.col(1) = closing.normalized();
  r.col(2) = r.col(0).cross(r.col(1));
  return r;
}

}  // namespace

std::string_view to_string(Tier t) {
  switch (t) {
    case Tier::kEasy: return "easy";
    case Tier::kMedium: return "medium";
    case Tier::kHard: return "hard";
  }
  return "easy";
}

Tier parse_tier(std::string_view s) {
  if (s == "easy") return Tier::kEasy;
  if (s == "medium") return Tier::kMedium;
  if (s == "hard") return Tier::kHard;
  throw Error(ErrorCode::kInvalidConfig, "unknown tier '" + std::string(s) + "'");
}

Mat3 Box::rotation() const {
  return Eigen::AngleAxisd(yaw, Vec3::UnitZ()).toRotationMatrix();
}

double Box::distance(const Vec3& p) const {
  const Vec3 local = rotation().transpose() * (p - center);
  const Vec3 q = local.cwiseAbs() - half;
  return q.cwiseMax(0.0).norm();
}

double Cylinder::distance(const Vec3& p) const {
  const double radial = std::max(0.0, (p - base_center).head<2>().norm() - radius);
  const double below = base_center.z() - p.z();
  const double above = p.z() - (base_center.z() + height);
  const double vertical = std::max({0.0, below, above});
  return std::hypot(radial, vertical);
}

double distance(const Shape& s, const Vec3& p) {
  return std::visit([&](const auto& shape) { return shape.distance(p); }, s);
}

Vec3 shape_center(const Shape& s) {
  if (const auto* b = std::get_if<Box>(&s)) return b->center;
  const auto& c = std::get<Cylinder>(s);
  return c.base_center + Vec3(0, 0, c.height / 2);
}

double shape_top(const Shape& s) {
  if (const auto* b = std::get_if<Box>(&s)) return b->center.z() + b->half.z();
  const auto& c = std::get<Cylinder>(s);
  return c.base_center.z() + c.height;
}

double footprint_radius(const Shape& s) {
  if (const auto* b = std::get_if<Box>(&s)) return std::hypot(b->half.x(), b->half.y());
  return std::get<Cylinder>(s).radius;
}

Vec3 SimCabinet::drawer_corner(std::size_t d, int c) const {
  const SimDrawer& dr = drawers.at(d);
  const Vec3 right = body.rotation().col(1);
  const Vec3 up = Vec3::UnitZ();
  static constexpr int kSx[4] = {-1, 1, 1, -1};
  static constexpr int kSy[4] = {-1, -1, 1, 1};
  return dr.front_center + kSx[c] * dr.front_half.x() * right + kSy[c] * dr.front_half.y() * up;
}

std::pair<int, int> face_grid(double a, double b, double density) {
  const double per_meter = std::sqrt(density);
  return {std::max(1, static_cast<int>(std::lround(a * per_meter))),
          std::max(1, static_cast<int>(std::lround(b * per_meter)))};
}

void SceneSpec::validate() const {
  if (!(room.x() > 1.0) || !(room.y() > 1.0)) throw config_error("'room' must exceed 1 m per side");
  if (!(wall_height > 0)) throw config_error("'wall_height' must be positive");
  if (!(env_density > 0)) throw config_error("'env_density' must be positive");
  if (!(object_density > 0)) throw config_error("'object_density' must be positive");
  if (max_retries < 1) throw config_error("'max_retries' must be >= 1");
  std::set<std::string> labels;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const ObjectSpec& o = objects[i];
    const std::string path = "objects[" + std::to_string(i) + "]";
    if (o.label.empty()) throw config_error("'" + path + ".label' is empty");
    if (!labels.insert(o.label).second) {
      throw config_error("'" + path + ".label' duplicates '" + o.label + "'");
    }
    const std::size_t need = o.shape == "box" ? 3 : (o.shape == "cylinder" ? 2 : 0);
    if (need == 0) throw config_error("'" + path + ".shape' must be box or cylinder");
    if (o.size.size() != need ||
        std::any_of(o.size.begin(), o.size.end(), [](double v) { return !(v > 0); })) {
      throw config_error("'" + path + ".size' needs " + std::to_string(need) + " positive values");
    }
  }
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    if (!(obstacles[i].size.minCoeff() > 0)) {
      throw config_error("'obstacles[" + std::to_string(i) + "].size' must be positive");
    }
    labels.insert(obstacles[i].label);
  }
  for (std::size_t i = 0; i < cabinets.size(); ++i) {
    const CabinetSpec& c = cabinets[i];
    const std::string path = "cabinets[" + std::to_string(i) + "]";
    if (!(c.size.minCoeff() > 0)) throw config_error("'" + path + ".size' must be positive");
    if (c.rows < 1 || c.cols < 1) throw config_error("'" + path + ".rows/cols' must be >= 1");
    if (!(c.handle_size.minCoeff() > 0)) throw config_error("'" + path + ".handle_size' must be positive");
    labels.insert(c.label);
  }
  if (!search_item.empty()) {
    if (cabinets.empty()) throw config_error("'search_item' needs at least one cabinet");
    labels.insert(search_item);
  }
  if (labels.size() > embedding_dim) {
    throw config_error("'embedding_dim' " + std::to_string(embedding_dim) + " is smaller than the " +
                       std::to_string(labels.size()) + " distinct labels");
  }
}

SceneSpec scene_spec_from_json(const json& doc) {
  check_keys(doc, {"room", "wall_height", "env_density", "object_density", "embedding_dim",
                   "max_retries", "objects", "obstacles", "cabinets", "search_item"},
             "");
  SceneSpec spec;
  if (doc.contains("room")) spec.room = vec2_at(doc, "room", "spec");
  spec.wall_height = get_or(doc, "wall_height", "spec", spec.wall_height);
  spec.env_density = get_or(doc, "env_density", "spec", spec.env_density);
  spec.object_density = get_or(doc, "object_density", "spec", spec.object_density);
  spec.embedding_dim = get_or(doc, "embedding_dim", "spec", spec.embedding_dim);
  spec.max_retries = get_or(doc, "max_retries", "spec", spec.max_retries);
  spec.search_item = get_or<std::string>(doc, "search_item", "spec", "");

  std::size_t i = 0;
  for (const json& o : get_or(doc, "objects", "spec", json::array())) {
    const std::string path = "objects[" + std::to_string(i++) + "]";
    check_keys(o, {"label", "shape", "size", "grasp_tier", "placement", "position", "yaw"}, path);
    ObjectSpec s;
    s.label = get_or<std::string>(o, "label", path, "");
    s.shape = get_or<std::string>(o, "shape", path, "box");
    s.size = get_or<std::vector<double>>(o, "size", path, {});
    if (o.contains("grasp_tier")) s.grasp_tier = tier_at(o, "grasp_tier", path);
    if (o.contains("placement")) s.placement = tier_at(o, "placement", path);
    if (o.contains("position")) s.position = vec2_at(o, "position", path);
    s.yaw = get_or(o, "yaw", path, 0.0);
    spec.objects.push_back(std::move(s));
  }
  i = 0;
  for (const json& o : get_or(doc, "obstacles", "spec", json::array())) {
    const std::string path = "obstacles[" + std::to_string(i++) + "]";
    check_keys(o, {"label", "size", "position", "yaw"}, path);
    ObstacleSpec s;
    s.label = get_or<std::string>(o, "label", path, s.label);
    if (o.contains("size")) s.size = vec3_at(o, "size", path);
    if (o.contains("position")) s.position = vec2_at(o, "position", path);
    s.yaw = get_or(o, "yaw", path, 0.0);
    spec.obstacles.push_back(std::move(s));
  }
  i = 0;
  for (const json& o : get_or(doc, "cabinets", "spec", json::array())) {
    const std::string path = "cabinets[" + std::to_string(i++) + "]";
    check_keys(o, {"label", "position", "yaw", "size", "rows", "cols", "handle_size"}, path);
    CabinetSpec s;
    s.label = get_or<std::string>(o, "label", path, s.label);
    s.position = vec2_at(o, "position", path);
    s.yaw = get_or(o, "yaw", path, 0.0);
    if (o.contains("size")) s.size = vec3_at(o, "size", path);
    s.rows = get_or(o, "rows", path, s.rows);
    s.cols = get_or(o, "cols", path, s.cols);
    if (o.contains("handle_size")) s.handle_size = vec3_at(o, "handle_size", path);
    spec.cabinets.push_back(std::move(s));
  }
  spec.validate();
  return spec;
}

json scene_spec_to_json(const SceneSpec& spec) {
  json objects = json::array();
  for (const ObjectSpec& o : spec.objects) {
    json j = {{"label", o.label}, {"shape", o.shape}, {"size", o.size},
              {"grasp_tier", std::string(to_string(o.grasp_tier))}, {"yaw", o.yaw}};
    if (o.placement) j["placement"] = std::string(to_string(*o.placement));
    if (o.position) j["position"] = {o.position->x(), o.position->y()};
    objects.push_back(std::move(j));
  }
  json obstacles = json::array();
  for (const ObstacleSpec& o : spec.obstacles) {
    json j = {{"label", o.label}, {"size", {o.size.x(), o.size.y(), o.size.z()}}, {"yaw", o.yaw}};
    if (o.position) j["position"] = {o.position->x(), o.position->y()};
    obstacles.push_back(std::move(j));
  }
  json cabinets = json::array();
  for (const CabinetSpec& c : spec.cabinets) {
    cabinets.push_back({{"label", c.label},
                        {"position", {c.position.x(), c.position.y()}},
                        {"yaw", c.yaw},
                        {"size", {c.size.x(), c.size.y(), c.size.z()}},
                        {"rows", c.rows},
                        {"cols", c.cols},
                        {"handle_size", {c.handle_size.x(), c.handle_size.y(), c.handle_size.z()}}});
  }
  json doc = {{"room", {spec.room.x(), spec.room.y()}},
              {"wall_height", spec.wall_height},
              {"env_density", spec.env_density},
              {"object_density", spec.object_density},
              {"embedding_dim", spec.embedding_dim},
              {"max_retries", spec.max_retries},
              {"objects", std::move(objects)},
              {"obstacles", std::move(obstacles)},
              {"cabinets", std::move(cabinets)}};
  if (!spec.search_item.empty()) doc["search_item"] = spec.search_item;
  return doc;
}

SceneSpec default_grasp_spec() {
  SceneSpec spec;
  spec.objects = {
      {"block", "box", {0.06, 0.06, 0.12}, Tier::kEasy, std::nullopt, std::nullopt, 0.0},
      {"bottle", "cylinder", {0.035, 0.20}, Tier::kMedium, std::nullopt, std::nullopt, 0.0},
      {"book", "box", {0.24, 0.08, 0.05}, Tier::kHard, std::nullopt, std::nullopt, 0.0},
  };
  spec.obstacles = {ObstacleSpec{"crate", Vec3(0.4, 0.4, 0.5), std::nullopt, 0.0},
                    ObstacleSpec{"crate_small", Vec3(0.3, 0.3, 0.35), std::nullopt, 0.0}};
  return spec;
}

SceneSpec default_search_spec() {
  SceneSpec spec;
  CabinetSpec a;
  a.label = "cabinet";
  a.size = Vec3(0.6, 0.45, 0.8);
  a.position = Vec2(2.0, 0.5 * a.size.y());
  a.yaw = kPi / 2;
  a.rows = 3;
  a.cols = 1;
  CabinetSpec b;
  b.label = "cabinet";
  b.size = Vec3(0.8, 0.45, 0.7);
  b.position = Vec2(0.5 * b.size.y(), 2.5);
  b.yaw = 0.0;
  b.rows = 2;
  b.cols = 2;
  spec.cabinets = {a, b};
  spec.search_item = "keys";
  return spec;
}

std::vector<double> SyntheticScene::label_embedding(std::string_view label) const {
  const std::size_t dim = spec.embedding_dim;
  std::vector<double> code(dim, 0.0);
  const auto it = std::lower_bound(labels.begin(), labels.end(), label);
  if (it != labels.end() && *it == label) {
    code[static_cast<std::size_t>(it - labels.begin())] = 1.0;
  } else if (labels.size() < dim) {
    code[labels.size()] = 1.0;
  } else {
    std::fill(code.begin(), code.end(), 1.0 / std::sqrt(static_cast<double>(dim)));
  }
  return code;
}

const SimObject* SyntheticScene::object_by_label(std::string_view label) const {
  for (const SimObject& o : objects) {
    if (o.label == label) return &o;
  }
  return nullptr;
}

const SimObject* SyntheticScene::object_by_instance(int id) const {
  for (const SimObject& o : objects) {
    if (o.instance_id == id) return &o;
  }
  return nullptr;
}

const SimCabinet* SyntheticScene::cabinet_by_instance(int id) const {
  for (const SimCabinet& c : cabinets) {
    if (c.instance_id == id) return &c;
  }
  return nullptr;
}

std::vector<Shape> SyntheticScene::shapes() const {
  std::vector<Shape> out(structure.begin(), structure.end());
  for (const SimObject& o : objects) out.push_back(o.shape);
  for (const SimObstacle& o : obstacles) out.push_back(o.box);
  for (const SimCabinet& c : cabinets) {
    out.push_back(c.body);
    for (const SimDrawer& d : c.drawers) out.push_back(d.handle);
  }
  return out;
}

SyntheticScene generate_scene(const SceneSpec& spec, std::uint64_t seed) {
  spec.validate();
  SyntheticScene scene;
  scene.spec = spec;
  scene.seed = seed;
  Rng place_rng(derive_seed(seed, "placement"));
  Rng sample_rng(derive_seed(seed, "surface"));

  const double sx = spec.room.x();
  const double sy = spec.room.y();
  const double h = spec.wall_height;
  constexpr double t = 0.05;  // half thickness of structure slabs
  scene.structure = {
      Box{Vec3(sx / 2, sy / 2, -t), Vec3(sx / 2 + 2 * t, sy / 2 + 2 * t, t), 0.0},
      Box{Vec3(-t, sy / 2, h / 2), Vec3(t, sy / 2 + 2 * t, h / 2), 0.0},
      Box{Vec3(sx + t, sy / 2, h / 2), Vec3(t, sy / 2 + 2 * t, h / 2), 0.0},
      Box{Vec3(sx / 2, -t, h / 2), Vec3(sx / 2, t, h / 2), 0.0},
      Box{Vec3(sx / 2, sy + t, h / 2), Vec3(sx / 2, t, h / 2), 0.0},
  };

  std::vector<Footprint> taken;
  int next_id = 1;

  for (const CabinetSpec& cs : spec.cabinets) {
    SimCabinet cab;
    cab.instance_id = next_id++;
    cab.label = cs.label;
    const double width = cs.size.x(), depth = cs.size.y(), height = cs.size.z();
    cab.body = Box{Vec3(cs.position.x(), cs.position.y(), height / 2),
                   Vec3(depth / 2, width / 2, height / 2), cs.yaw};
    const Mat3 r = cab.body.rotation();
    cab.axis = r.col(0);
    constexpr double margin = 0.02;
    const double cell_w = width / cs.cols;
    const double cell_h = height / cs.rows;
    const double prot = cs.handle_size.z();
    for (int row = 0; row < cs.rows; ++row) {
      for (int col = 0; col < cs.cols; ++col) {
        const double y = -width / 2 + (col + 0.5) * cell_w;
        const double z = -height / 2 + (row + 0.5) * cell_h;
        SimDrawer d;
        d.front_center = cab.body.center + r * Vec3(depth / 2, y, z);
        d.front_half = Vec2((cell_w - margin) / 2, (cell_h - margin) / 2);
        d.handle = Box{cab.body.center + r * Vec3(depth / 2 + prot / 2, y, z),
                       Vec3(prot / 2, cs.handle_size.x() / 2, cs.handle_size.y() / 2), cs.yaw};
        d.handle_point = cab.body.center + r * Vec3(depth / 2 + prot, y, z);
        cab.drawers.push_back(d);
      }
    }
    taken.push_back({cs.position, std::hypot(width / 2, depth / 2)});
    scene.cabinets.push_back(std::move(cab));
  }

  auto place = [&](const std::string& label, double radius, std::optional<Vec2> fixed,
                   Tier placement) -> Vec2 {
    if (fixed) {
      taken.push_back({*fixed, radius});
      return *fixed;
    }
    for (int attempt = 0; attempt < spec.max_retries; ++attempt) {
      Vec2 c;
      const double gap = radius + 0.05;
      switch (placement) {
        case Tier::kEasy:
          c = Vec2(place_rng.uniform(1.0, sx - 1.0), place_rng.uniform(1.0, sy - 1.0));
          break;
        case Tier::kMedium: {
          const std::size_t wall = place_rng.index(4);
          const double along = place_rng.uniform(0.8, (wall < 2 ? sy : sx) - 0.8);
          c = wall == 0   ? Vec2(gap, along)
              : wall == 1 ? Vec2(sx - gap, along)
              : wall == 2 ? Vec2(along, gap)
                          : Vec2(along, sy - gap);
          break;
        }
        case Tier::kHard: {
          const std::size_t corner = place_rng.index(4);
          c = Vec2(corner & 1 ? sx - gap : gap, corner & 2 ? sy - gap : gap);
          break;
        }
      }
      if (fits(taken, {c, radius})) {
        taken.push_back({c, radius});
        return c;
      }
    }
    throw Error(ErrorCode::kGeneration, "cannot place '" + label + "' after " +
                                            std::to_string(spec.max_retries) + " attempts");
  };

  for (const ObstacleSpec& os : spec.obstacles) {
    SimObstacle obs;
    obs.instance_id = next_id++;
    obs.label = os.label;
    const double radius = std::hypot(os.size.x() / 2, os.size.y() / 2);
    const Vec2 c = place(os.label, radius, os.position, Tier::kEasy);
    const double yaw = os.position ? os.yaw : place_rng.uniform(0.0, kPi);
    obs.box = Box{Vec3(c.x(), c.y(), os.size.z() / 2), os.size / 2, yaw};
    scene.obstacles.push_back(obs);
  }

  for (const ObjectSpec& spec_obj : spec.objects) {
    SimObject obj;
    obj.instance_id = next_id++;
    obj.label = spec_obj.label;
    obj.grasp_tier = spec_obj.grasp_tier;
    obj.placement = spec_obj.placement ? *spec_obj.placement
                                       : static_cast<Tier>(place_rng.index(3));
    const double yaw = spec_obj.position ? spec_obj.yaw : place_rng.uniform(0.0, kPi);
    double radius;
    if (spec_obj.shape == "box") {
      radius = std::hypot(spec_obj.size[0] / 2, spec_obj.size[1] / 2);
    } else {
      radius = spec_obj.size[0];
    }
    const Vec2 c = place(spec_obj.label, radius, spec_obj.position, obj.placement);
    if (spec_obj.shape == "box") {
      obj.shape = Box{Vec3(c.x(), c.y(), spec_obj.size[2] / 2),
                      Vec3(spec_obj.size[0] / 2, spec_obj.size[1] / 2, spec_obj.size[2] / 2), yaw};
    } else {
      obj.shape = Cylinder{Vec3(c.x(), c.y(), 0.0), spec_obj.size[0], spec_obj.size[1]};
    }
    scene.objects.push_back(std::move(obj));
  }

  if (!spec.search_item.empty()) {
    std::size_t total = 0;
    for (const SimCabinet& c : scene.cabinets) total += c.drawers.size();
    std::size_t pick = place_rng.index(total);
    for (SimCabinet& c : scene.cabinets) {
      if (pick < c.drawers.size()) {
        c.drawers[pick].content = spec.search_item;
        break;
      }
      pick -= c.drawers.size();
    }
  }

  std::set<std::string> label_set;
  for (const SimObject& o : scene.objects) label_set.insert(o.label);
  for (const SimObstacle& o : scene.obstacles) label_set.insert(o.label);
  for (const SimCabinet& c : scene.cabinets) label_set.insert(c.label);
  if (!spec.search_item.empty()) label_set.insert(spec.search_item);
  scene.labels.assign(label_set.begin(), label_set.end());

  // Surface sampling: floor and walls are unlabelled, everything else is an
  // instance.
  std::vector<Vec3> points;
  sample_rect(Vec3(0, 0, 0), Vec3(sx, 0, 0), Vec3(0, sy, 0), spec.env_density, sample_rng, points);
  sample_rect(Vec3(0, 0, 0), Vec3(0, sy, 0), Vec3(0, 0, h), spec.env_density, sample_rng, points);
  sample_rect(Vec3(sx, 0, 0), Vec3(0, sy, 0), Vec3(0, 0, h), spec.env_density, sample_rng, points);
  sample_rect(Vec3(0, 0, 0), Vec3(sx, 0, 0), Vec3(0, 0, h), spec.env_density, sample_rng, points);
  sample_rect(Vec3(0, sy, 0), Vec3(sx, 0, 0), Vec3(0, 0, h), spec.env_density, sample_rng, points);

  std::vector<InstanceMask> instances;
  auto add_instance = [&](int id, const std::string& label, auto&& sampler) {
    const std::size_t begin = points.size();
    sampler();
    InstanceMask m;
    m.id = id;
    m.label = label;
    m.confidence = 1.0;
    for (std::size_t i = begin; i < points.size(); ++i) m.point_indices.push_back(i);
    m.embedding = scene.label_embedding(label);
    instances.push_back(std::move(m));
  };
  for (const SimCabinet& c : scene.cabinets) {
    add_instance(c.instance_id, c.label, [&] {
      sample_box(c.body, spec.object_density, true, sample_rng, points);
      for (const SimDrawer& d : c.drawers) {
        sample_box(d.handle, spec.object_density, false, sample_rng, points);
      }
    });
  }
  for (const SimObstacle& o : scene.obstacles) {
    add_instance(o.instance_id, o.label,
                 [&] { sample_box(o.box, spec.object_density, true, sample_rng, points); });
  }
  for (const SimObject& o : scene.objects) {
    add_instance(o.instance_id, o.label, [&] {
      if (const auto* b = std::get_if<Box>(&o.shape)) {
        sample_box(*b, spec.object_density, true, sample_rng, points);
      } else {
        sample_cylinder(std::get<Cylinder>(o.shape), spec.object_density, sample_rng, points);
      }
    });
  }
  scene.cloud = std::make_shared<const PointCloudScene>(std::move(points), std::vector<Rgb>{},
                                                        std::move(instances), spec.embedding_dim);
  return scene;
}

std::vector<GraspCandidate> feasible_grasps(const SimObject& object, double max_width) {
  static constexpr double kTilts[] = {0.0, kPi / 6, -kPi / 6, kPi / 3, -kPi / 3};
  const Vec3 up = Vec3::UnitZ();
  std::vector<GraspCandidate> out;
  auto emit = [&](const Vec3& center, const Vec3& closing, const Vec3& side, double width) {
    for (double tilt : kTilts) {
      GraspCandidate g;
      const Vec3 approach = -std::cos(tilt) * up + std::sin(tilt) * side;
      g.pose.rotation = grasp_frame(approach, closing);
      g.pose.translation = center;
      g.width = width;
      g.score = 1.0;
      out.push_back(g);
    }
  };

  if (const auto* box = std::get_if<Box>(&object.shape)) {
    const Mat3 r = box->rotation();
    for (int closing = 0; closing < 2; ++closing) {
      const double width = 2 * box->half(closing);
      if (width > max_width) continue;
      const int other = 1 - closing;
      const double length = 2 * box->half(other);
      std::vector<double> offsets{0.0};
      if (length > 0.06) offsets = {-length / 4, 0.0, length / 4};
      for (double off : offsets) {
        const Vec3 center = box->center + off * r.col(other) + (box->half.z() - kGraspDepth) * up;
        emit(center, r.col(closing), r.col(other), width);
      }
    }
  } else {
    const auto& cyl = std::get<Cylinder>(object.shape);
    const double width = 2 * cyl.radius;
    if (width <= max_width) {
      const Vec3 center = cyl.base_center + (cyl.height - kGraspDepth) * up;
      for (int k = 0; k < 6; ++k) {
        const double yaw = k * kPi / 6;
        const Vec3 closing(std::cos(yaw), std::sin(yaw), 0);
        emit(center, closing, up.cross(closing), width);
      }
    }
  }
  return out;
}

}  // namespace mmplan::sim
