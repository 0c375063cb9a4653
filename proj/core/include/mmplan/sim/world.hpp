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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmplan/geometry/types.hpp"
#include "mmplan/grasp/grasp.hpp"
#include "mmplan/scene/scene.hpp"

namespace mmplan::sim {

enum class Tier { kEasy = 0, kMedium = 1, kHard = 2 };

std::string_view to_string(Tier t);
Tier parse_tier(std::string_view s);

// Box rotated by `yaw` about +z.
struct Box {
  Vec3 center = Vec3::Zero();
  Vec3 half = Vec3::Constant(0.05);
  double yaw = 0;

  Mat3 rotation() const;
  // Distance from p to the solid box (0 inside).
  double distance(const Vec3& p) const;
};

// Upright cylinder standing on base_center.
struct Cylinder {
  Vec3 base_center = Vec3::Zero();
  double radius = 0.05;
  double height = 0.1;

  double distance(const Vec3& p) const;
};

using Shape = std::variant<Box, Cylinder>;

double distance(const Shape& s, const Vec3& p);
Vec3 shape_center(const Shape& s);
double shape_top(const Shape& s);
// Radius of the shape's ground footprint around its centre.
double footprint_radius(const Shape& s);

struct SimObject {
  int instance_id = 0;
  std::string label;
  Shape shape;
  Tier grasp_tier = Tier::kEasy;
  Tier placement = Tier::kEasy;
};

struct SimObstacle {
  int instance_id = 0;
  std::string label;
  Box box;
};

struct SimDrawer {
  Vec3 front_center = Vec3::Zero();
  Vec2 front_half = Vec2::Zero();  // half width, half height on the front face
  Box handle;
  Vec3 handle_point = Vec3::Zero(); // centre of the handle's outer face
  std::string content;              // item label or empty
};

struct SimCabinet {
  int instance_id = 0;
  std::string label;
  Box body;
  Vec3 axis = Vec3::UnitX();        // outward front normal (true axis of motion)
  std::vector<SimDrawer> drawers;

  // Front-face corner of drawer d, c in 0..3 (counter-clockwise).
  Vec3 drawer_corner(std::size_t d, int c) const;
};

// Scene parameters, usually read from JSON.
struct ObjectSpec {
  std::string label;
  std::string shape = "box";     // "box" | "cylinder"
  std::vector<double> size;      // box: sx sy sz; cylinder: radius height
  Tier grasp_tier = Tier::kEasy;
  std::optional<Tier> placement; // unset: drawn per seed
  std::optional<Vec2> position;
  double yaw = 0;
};

struct ObstacleSpec {
  std::string label = "box";
  Vec3 size = Vec3(0.4, 0.4, 0.5);
  std::optional<Vec2> position;
  double yaw = 0;
};

struct CabinetSpec {
  std::string label = "cabinet";
  Vec2 position = Vec2::Zero();  // centre of the footprint
  double yaw = 0;                // front normal direction
  Vec3 size = Vec3(0.8, 0.45, 0.8);  // width, depth, height
  int rows = 2;
  int cols = 1;
  Vec3 handle_size = Vec3(0.12, 0.025, 0.03);  // width, height, protrusion
};

struct SceneSpec {
  Vec2 room = Vec2(4.0, 4.0);
  double wall_height = 1.0;
  double env_density = 1600.0;     // points per m^2 on floor and walls
  double object_density = 10000.0; // points per m^2 on objects and furniture
  std::size_t embedding_dim = 16;
  int max_retries = 200;
  std::vector<ObjectSpec> objects;
  std::vector<ObstacleSpec> obstacles;
  std::vector<CabinetSpec> cabinets;
  std::string search_item;         // placed in one drawer per seed when set

  // Throws kInvalidConfig naming the offending field.
  void validate() const;
};

SceneSpec scene_spec_from_json(const nlohmann::json& doc);
nlohmann::json scene_spec_to_json(const SceneSpec& spec);

// Built-in scenes used by the acceptance suite and the CLI defaults.
SceneSpec default_grasp_spec();
SceneSpec default_search_spec();

struct SyntheticScene {
  SceneSpec spec;
  std::uint64_t seed = 0;
  std::vector<Box> structure;  // floor slab and walls
  std::vector<SimObject> objects;
  std::vector<SimObstacle> obstacles;
  std::vector<SimCabinet> cabinets;
  std::vector<std::string> labels;  // sorted; index = one-hot code position
  std::shared_ptr<const PointCloudScene> cloud;

  // One-hot code for `label`. Unknown labels get an unused basis vector so
  // they match nothing.
  std::vector<double> label_embedding(std::string_view label) const;

  const SimObject* object_by_label(std::string_view label) const;
  const SimObject* object_by_instance(int id) const;
  const SimCabinet* cabinet_by_instance(int id) const;

  // Every primitive for ray casting and collision checks.
  std::vector<Shape> shapes() const;
};

// Deterministic for (spec, seed). Throws kGeneration when placements cannot
// be resolved within spec.max_retries.
SyntheticScene generate_scene(const SceneSpec& spec, std::uint64_t seed);

// Stratified sample counts along each edge for a face of size a x b.
std::pair<int, int> face_grid(double a, double b, double density);

// Ground-truth antipodal grasps (score 1) for an object and gripper.
std::vector<GraspCandidate> feasible_grasps(const SimObject& object, double max_width);

}  // namespace mmplan::sim
