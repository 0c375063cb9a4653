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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "mmplan/error.hpp"
#include "mmplan/sim/batch.hpp"
#include "mmplan/sim/episode.hpp"
#include "mmplan/sim/render.hpp"
#include "mmplan/sim/world.hpp"
#include "support.hpp"

namespace mmplan::sim {
namespace {

using mmplan::testing::code_of;

constexpr double kPi = std::numbers::pi;

double angle_deg(const Vec3& a, const Vec3& b) {
  return std::acos(std::clamp(a.normalized().dot(b.normalized()), -1.0, 1.0)) * 180 / kPi;
}

SceneSpec three_objects() {
  SceneSpec s;
  s.objects = {{"a", "box", {0.1, 0.1, 0.1}, Tier::kEasy, Tier::kEasy, std::nullopt, 0},
               {"b", "cylinder", {0.04, 0.2}, Tier::kMedium, Tier::kMedium, std::nullopt, 0},
               {"c", "box", {0.2, 0.1, 0.05}, Tier::kHard, Tier::kHard, std::nullopt, 0}};
  return s;
}

SceneSpec single_drawer() {
  SceneSpec s;
  CabinetSpec c;
  c.position = Vec2(2.0, 0.225);
  c.yaw = kPi / 2;
  c.rows = 1;
  c.cols = 1;
  s.cabinets = {c};
  s.search_item = "keys";
  return s;
}

TEST(SceneGen, Deterministic) {
  const SyntheticScene a = generate_scene(default_grasp_spec(), 11);
  const SyntheticScene b = generate_scene(default_grasp_spec(), 11);
  const SyntheticScene c = generate_scene(default_grasp_spec(), 12);
  EXPECT_EQ(a.cloud->points(), b.cloud->points());
  EXPECT_NE(a.cloud->points(), c.cloud->points());
  ASSERT_EQ(a.objects.size(), b.objects.size());
  for (std::size_t i = 0; i < a.objects.size(); ++i) {
    EXPECT_EQ(shape_center(a.objects[i].shape), shape_center(b.objects[i].shape));
  }
}

TEST(SceneGen, OneInstancePerObject) {
  const SyntheticScene s = generate_scene(three_objects(), 4);
  ASSERT_EQ(s.cloud->instances().size(), 3u);
  EXPECT_EQ(s.labels, (std::vector<std::string>{"a", "b", "c"}));
  for (const InstanceMask& m : s.cloud->instances()) {
    ASSERT_TRUE(m.embedding.has_value());
    EXPECT_EQ(*m.embedding, s.label_embedding(m.label));
    EXPECT_FALSE(m.point_indices.empty());
  }
  // Unknown labels match nothing.
  const auto unknown = s.label_embedding("zebra");
  for (const InstanceMask& m : s.cloud->instances()) {
    double dot = 0;
    for (std::size_t i = 0; i < unknown.size(); ++i) dot += unknown[i] * (*m.embedding)[i];
    EXPECT_EQ(dot, 0.0);
  }
}

TEST(SceneGen, SurfaceDensity) {
  EXPECT_EQ(face_grid(1.0, 1.0, 1e4), (std::pair{100, 100}));
  EXPECT_EQ(face_grid(0.001, 1.0, 1e4), (std::pair{1, 100}));
  SceneSpec s;
  s.objects = {{"cube", "box", {0.5, 0.5, 0.5}, Tier::kEasy, Tier::kEasy, std::nullopt, 0}};
  s.object_density = 1e4;
  const SyntheticScene scene = generate_scene(s, 1);
  // Five 0.25 m^2 faces (the bottom rests on the floor).
  EXPECT_EQ(scene.cloud->instances()[0].point_indices.size(), 5u * 2500u);
  const Box& box = std::get<Box>(scene.objects[0].shape);
  for (std::size_t i : scene.cloud->instances()[0].point_indices) {
    EXPECT_LT(box.distance(scene.cloud->points()[i]), 1e-6);
  }
}

TEST(SceneGen, PlacementsRespectTiers) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SyntheticScene s = generate_scene(default_grasp_spec(), seed);
    for (const SimObject& o : s.objects) {
      const Vec3 c = shape_center(o.shape);
      const double wall = std::min({c.x(), c.y(), s.spec.room.x() - c.x(), s.spec.room.y() - c.y()});
      if (o.placement == Tier::kEasy) {
        EXPECT_GE(wall, 1.0 - 1e-9);
      }
      EXPECT_GT(wall, 0.0);
    }
  }
}

TEST(SceneGen, SpecValidation) {
  SceneSpec s = three_objects();
  s.objects[1].size = {0.04};
  try {
    s.validate();
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidConfig);
    EXPECT_NE(std::string(e.what()).find("objects[1].size"), std::string::npos);
  }
  s = three_objects();
  s.embedding_dim = 2;
  EXPECT_EQ(code_of([&] { s.validate(); }), ErrorCode::kInvalidConfig);
  try {
    scene_spec_from_json({{"room", {4, 4}}, {"objcts", nlohmann::json::array()}});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidConfig);
    EXPECT_NE(std::string(e.what()).find("objcts"), std::string::npos);
  }
  const SceneSpec round = scene_spec_from_json(scene_spec_to_json(default_search_spec()));
  EXPECT_EQ(scene_spec_to_json(round), scene_spec_to_json(default_search_spec()));
}

TEST(SceneGen, CrowdedRoomFails) {
  SceneSpec s;
  s.room = Vec2(1.2, 1.2);
  s.max_retries = 5;
  for (int i = 0; i < 6; ++i) {
    s.objects.push_back({"o" + std::to_string(i), "box", {0.5, 0.5, 0.5}, Tier::kEasy,
                         Tier::kMedium, std::nullopt, 0});
  }
  EXPECT_EQ(code_of([&] { generate_scene(s, 1); }), ErrorCode::kGeneration);
}

const CameraIntrinsics kCam{300.0, 300.0, 159.5, 119.5, 320, 240};

TEST(Render, WallAtOneMeter) {
  const std::vector<Shape> wall{Box{Vec3(1.05, 0, 1), Vec3(0.05, 5, 5), 0}};
  const Pose cam{look_rotation(Vec3::UnitX()), Vec3(0, 0, 1)};
  const DepthImage d = render_depth(wall, kCam, cam, NoiseModel::noiseless(), 1);
  for (float v : d.data) EXPECT_NEAR(v, 1.0, 1e-6);

  NoiseModel all_dropped = NoiseModel::noiseless();
  all_dropped.depth_dropout = 1.0;
  const DepthImage z = render_depth(wall, kCam, cam, all_dropped, 1);
  for (float v : z.data) EXPECT_EQ(v, 0.f);
}

TEST(Render, TiltedWallMatchesRayPlaneOracle) {
  const double yaw = 0.3;
  const Box wall{Vec3(2, 0, 1), Vec3(0.05, 5, 5), yaw};
  const Vec3 n(std::cos(yaw), std::sin(yaw), 0);
  const double offset = n.dot(wall.center) - 0.05;
  const Pose cam{look_rotation(Vec3(1, 0.1, -0.1)), Vec3(0, 0, 1)};
  const DepthImage d = render_depth(std::vector<Shape>{wall}, kCam, cam, NoiseModel::noiseless(), 1);
  for (int v = 0; v < kCam.height; v += 7) {
    for (int u = 0; u < kCam.width; u += 7) {
      const Vec3 ray = cam.rotation * Vec3((u - kCam.cx) / kCam.fx, (v - kCam.cy) / kCam.fy, 1);
      const double t = (offset - n.dot(cam.translation)) / n.dot(ray);
      EXPECT_NEAR(d.at(u, v), t, 1e-5);
    }
  }
}

TEST(Render, CylinderIntersection) {
  const Cylinder c{Vec3(2, 0, 0), 0.5, 1.0};
  const auto hit = intersect(c, Vec3(0, 0, 0.5), Vec3::UnitX());
  ASSERT_TRUE(hit.has_value());
  EXPECT_NEAR(*hit, 1.5, 1e-12);
  EXPECT_FALSE(intersect(c, Vec3(0, 0, 1.5), Vec3::UnitX()).has_value());
  const auto top = intersect(c, Vec3(2, 0, 3), -Vec3::UnitZ());
  ASSERT_TRUE(top.has_value());
  EXPECT_NEAR(*top, 2.0, 1e-12);
}

Pose front_view(const SyntheticScene& s, std::size_t cabinet, double dist) {
  const SimCabinet& c = s.cabinets[cabinet];
  const Vec3 front = c.body.center + c.axis * (dist + c.body.half.y());
  return look_at(Vec3(front.x(), front.y(), 1.0), c.body.center);
}

TEST(OracleDetector, ZeroNoiseIsExact) {
  const SyntheticScene s = generate_scene(default_search_spec(), 3);
  const Pose cam = front_view(s, 1, 1.4);
  const auto dets = oracle_detections(s, kCam, cam, NoiseModel::noiseless(), 5);
  ASSERT_FALSE(dets.empty());
  std::size_t handles = 0;
  for (const OracleDetection& d : dets) {
    EXPECT_EQ(d.detection.bbox.xmin, std::clamp(d.exact.xmin, -0.5, kCam.width - 0.5));
    EXPECT_EQ(d.detection.bbox.ymax, std::clamp(d.exact.ymax, -0.5, kCam.height - 0.5));
    if (d.detection.cls == DetectionClass::kHandle) ++handles;
  }
  EXPECT_EQ(handles, 4u);  // 2 x 2 drawers all in view

  NoiseModel drop = NoiseModel::noiseless();
  drop.detection_dropout = 1.0;
  EXPECT_TRUE(oracle_detections(s, kCam, cam, drop, 5).empty());

  // Looking away from the cabinet sees nothing.
  const SimCabinet& c = s.cabinets[1];
  const Pose away = look_at(Vec3(c.body.center.x(), c.body.center.y(), 1) + 1.4 * c.axis,
                            Vec3(c.body.center.x(), c.body.center.y(), 1) + 3.0 * c.axis);
  EXPECT_TRUE(oracle_detections(s, kCam, away, NoiseModel::noiseless(), 5).empty());
}

TEST(OracleDetector, JitterStatistic) {
  const SyntheticScene s = generate_scene(default_search_spec(), 3);
  const Pose cam = front_view(s, 1, 1.4);
  NoiseModel noise = NoiseModel::noiseless();
  noise.bbox_jitter_sigma = 2.0;
  double sum = 0;
  int n = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    for (const OracleDetection& d : oracle_detections(s, kCam, cam, noise, seed)) {
      if (d.exact.xmin < 2 || d.exact.xmax > kCam.width - 3) continue;  // skip clipped boxes
      sum += std::abs(d.detection.bbox.xmin - d.exact.xmin) +
             std::abs(d.detection.bbox.xmax - d.exact.xmax);
      ++n;
    }
  }
  ASSERT_GT(n, 1000);
  const double expected = 2 * 2.0 * std::sqrt(2 / kPi);
  EXPECT_NEAR(sum / n, expected, 0.15 * expected);
}

TEST(OracleDetector, RecoveredAxisMatchesCabinetFront) {
  const SyntheticScene s = generate_scene(default_search_spec(), 7);
  for (const NoiseModel& noise : {NoiseModel::noiseless(), NoiseModel::reference()}) {
    for (std::size_t c = 0; c < s.cabinets.size(); ++c) {
      DetectionFrame f;
      f.intrinsics = kCam;
      f.cam_pose = front_view(s, c, 1.2);
      f.depth = render_depth(s, kCam, f.cam_pose, noise, 21);
      f.detections = oracle_detector(s, kCam, f.cam_pose, noise, 22);
      const std::vector frames{f};
      const auto targets = detect_drawers(frames, DrawerConfig{}, 23);
      ASSERT_FALSE(targets.empty());
      for (const DrawerTarget& t : targets) EXPECT_LT(angle_deg(t.axis, s.cabinets[c].axis), 2.0);
    }
  }
}

PipelineConfig noiseless_config() {
  PipelineConfig c;
  c.noise = NoiseModel::noiseless();
  return c;
}

TEST(GraspEpisode, NoiselessEasyObjectSucceeds) {
  SceneSpec spec;
  spec.objects = {{"block", "box", {0.06, 0.06, 0.12}, Tier::kEasy, Tier::kEasy, std::nullopt, 0}};
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SyntheticScene s = generate_scene(spec, seed);
    const EpisodeReport r = run_grasp_episode(s, "block", noiseless_config(), seed);
    EXPECT_TRUE(r.success) << to_json(r).dump();
    for (const StageOutcome& o : r.stages) EXPECT_EQ(o.status, StageStatus::kPass);
  }
}

TEST(GraspEpisode, MissingObjectFailsLocalization) {
  const SyntheticScene s = generate_scene(three_objects(), 2);
  const EpisodeReport r = run_grasp_episode(s, "teapot", noiseless_config(), 1);
  EXPECT_FALSE(r.success);
  ASSERT_TRUE(r.failed_stage().has_value());
  EXPECT_EQ(*r.failed_stage(), Stage::kLocalization);
  EXPECT_EQ(r.stages[1].status, StageStatus::kNotReached);
  const auto j = to_json(r);
  EXPECT_EQ(j["failed_stage"], "localization");
}

TEST(SearchEpisode, NoiselessSingleDrawer) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const SyntheticScene s = generate_scene(single_drawer(), seed);
    const EpisodeReport r = run_search_episode(s, "keys", noiseless_config(), seed);
    EXPECT_TRUE(r.success) << to_json(r).dump();
  }
}

TEST(SearchEpisode, NoDetectionsFailsDetection) {
  const SyntheticScene s = generate_scene(single_drawer(), 1);
  PipelineConfig c = noiseless_config();
  c.noise.detection_dropout = 1.0;
  const EpisodeReport r = run_search_episode(s, "keys", c, 1);
  EXPECT_FALSE(r.success);
  ASSERT_TRUE(r.failed_stage().has_value());
  EXPECT_EQ(*r.failed_stage(), Stage::kDetection);
}

TEST(Batch, DeterministicReports) {
  const PipelineConfig c;
  const BatchResult a = run_batch(Task::kGrasp, default_grasp_spec(), c, 6, 99);
  const BatchResult b = run_batch(Task::kGrasp, default_grasp_spec(), c, 6, 99);
  ASSERT_EQ(a.reports.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(to_json(a.reports[i]).dump(), to_json(b.reports[i]).dump());
  }
  EXPECT_EQ(to_json(a.summary).dump(), to_json(b.summary).dump());
  EXPECT_EQ(a.summary.overall.trials, 6u);
  std::size_t per_tier = 0;
  for (const Proportion& p : a.summary.by_object_tier) per_tier += p.trials;
  EXPECT_EQ(per_tier, 6u);
}

TEST(Batch, WilsonInterval) {
  const Proportion p{8, 10};
  const auto [lo, hi] = p.wilson();
  // Closed form with z = 1.959964.
  const double z = 1.959963984540054, n = 10, ph = 0.8;
  const double centre = (ph + z * z / (2 * n)) / (1 + z * z / n);
  const double half = z / (1 + z * z / n) * std::sqrt(ph * (1 - ph) / n + z * z / (4 * n * n));
  EXPECT_NEAR(lo, centre - half, 1e-9);
  EXPECT_NEAR(hi, centre + half, 1e-9);
  EXPECT_NEAR(lo, 0.4902, 1e-4);
  EXPECT_NEAR(hi, 0.9433, 1e-4);
  EXPECT_NEAR(p.half_width(), z * std::sqrt(0.16 / 10), 1e-9);
  EXPECT_EQ(Proportion{}.rate(), 0.0);
}

TEST(Config, Validation) {
  PipelineConfig c;
  EXPECT_NO_THROW(c.validate());
  c.noise.depth_dropout = 1.5;
  EXPECT_EQ(code_of([&] { c.validate(); }), ErrorCode::kInvalidConfig);
  c = PipelineConfig{};
  c.sim.views_per_cabinet = 0;
  EXPECT_EQ(code_of([&] { c.validate(); }), ErrorCode::kInvalidConfig);
}

}  // namespace
}  // namespace mmplan::sim
