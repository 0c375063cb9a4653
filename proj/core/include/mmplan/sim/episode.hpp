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

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "mmplan/drawer/drawer.hpp"
#include "mmplan/grasp/grasp.hpp"
#include "mmplan/nav/nav.hpp"
#include "mmplan/optimizer/optimizer.hpp"
#include "mmplan/sim/render.hpp"
#include "mmplan/sim/world.hpp"

namespace mmplan::sim {

// Nominal per-call latencies (seconds) charged to stage timings. Reports use
// these instead of wall-clock time so they stay byte-reproducible.
struct LatencyModel {
  double localization = 0.221;
  double grasp_estimation = 13.7;
  double navigation = 24.0;
  double joint_optimization = 0.0003;
  double drawer_detection = 0.84;
  double object_detection = 2.85;
};

struct SimConfig {
  CameraIntrinsics camera{300.0, 300.0, 159.5, 119.5, 320, 240};
  double min_similarity = 0.5;       // localization acceptance
  double gripper_max_width = 0.10;
  std::array<int, 3> proposals_per_tier{12, 6, 2};
  std::array<double, 3> tier_noise_scale{1.0, 2.0, 3.0};
  double grasp_center_tol = 0.02;    // execution success
  double axis_tol_deg = 5.0;
  double handle_tol = 0.03;
  int viewpoint_count = 11;          // arc candidates per cabinet
  double viewpoint_span_deg = 100.0;
  double viewpoint_radius = 1.4;     // from the cabinet centroid
  double viewpoint_height = 1.0;
  int views_per_cabinet = 3;         // chosen by farthest point sampling
  double close_view_distance = 0.5;
  LatencyModel latency;

  void validate() const;
};

struct PipelineConfig {
  NavConfig nav;
  OptimizerWeights optimizer;
  GraspConfig grasp;
  DrawerConfig drawer;
  SimConfig sim;
  NoiseModel noise;

  void validate() const;
};

enum class Task { kGrasp, kSearch };
enum class Stage { kLocalization = 0, kDetection = 1, kNavigation = 2, kManipulation = 3 };
enum class StageStatus { kPass, kFail, kNotReached };

std::string_view to_string(Task t);
std::string_view to_string(Stage s);
std::string_view to_string(StageStatus s);

struct StageOutcome {
  StageStatus status = StageStatus::kNotReached;
  std::string reason;
  double time_s = 0;
};

struct EpisodeReport {
  Task task = Task::kGrasp;
  std::uint64_t seed = 0;
  std::string query;
  std::array<StageOutcome, 4> stages;
  bool success = false;
  nlohmann::json details = nlohmann::json::object();

  // First failing stage, if any.
  std::optional<Stage> failed_stage() const;
};

nlohmann::json to_json(const EpisodeReport& report);

// Localize, propose and filter grasps, place the body, select the joint
// optimum and check it against ground truth. Failures are outcomes.
EpisodeReport run_grasp_episode(const SyntheticScene& scene, const std::string& query,
                                const PipelineConfig& config, std::uint64_t seed);

// Localize cabinets, capture FPS-selected views, fuse drawer targets, then
// plan, refine and open drawers until the queried item is found.
EpisodeReport run_search_episode(const SyntheticScene& scene, const std::string& query,
                                 const PipelineConfig& config, std::uint64_t seed);

// Camera poses on an arc in front of a cabinet (facing the room centre).
std::vector<Pose> viewpoint_arc(const SyntheticScene& scene, const Vec3& cabinet_centroid,
                                const SimConfig& config);

}  // namespace mmplan::sim
