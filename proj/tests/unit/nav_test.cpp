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
#include "mmplan/nav/nav.hpp"
#include "support.hpp"

namespace mmplan {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(SamplePositions, FourOnUnitRing) {
  NavConfig c;
  c.radii = {1.0};
  c.angular_step = kPi / 2;
  const Vec3 target(2, 3, 0.4);
  const auto out = sample_positions(target, c);
  ASSERT_EQ(out.size(), 4u);
  for (const BodyCandidate& b : out) {
    EXPECT_NEAR((b.position - target.head<2>()).norm(), 1.0, 1e-12);
    const Vec2 facing(std::cos(b.yaw), std::sin(b.yaw));
    EXPECT_NEAR(facing.dot((target.head<2>() - b.position).normalized()), 1.0, 1e-12);
    EXPECT_FALSE(b.valid);
  }
}

TEST(SamplePositions, CountFormula) {
  NavConfig c;
  c.radii = {0.8, 1.2};
  c.angular_step = kPi / 8;
  const auto out = sample_positions(Vec3::Zero(), c);
  EXPECT_EQ(out.size(), 32u);
  for (std::size_t i = 0; i < out.size(); ++i) {
    EXPECT_NEAR(out[i].position.norm(), i < 16 ? 0.8 : 1.2, 1e-12);
  }
  EXPECT_EQ(sample_positions(Vec3::Zero(), NavConfig{}).size(), 108u);
  c.angular_step = 0.7;  // 2*pi/0.7 = 8.98 -> 9 per ring
  EXPECT_EQ(sample_positions(Vec3::Zero(), c).size(), 18u);
}

TEST(NavConfig, Validation) {
  NavConfig c;
  c.radii = {1.0, 0.5};
  EXPECT_THROW(c.validate(), Error);
  c = NavConfig{};
  c.angular_step = 0;
  EXPECT_THROW(c.validate(), Error);
  c = NavConfig{};
  c.los_clearance = -1;
  EXPECT_THROW(c.validate(), Error);
}

TEST(BodyScore, Formula) { EXPECT_DOUBLE_EQ(body_score(0.8, 1.0, 0.5), 0.3); }

// Floor grid over [0, 4]^2 and a small target block at (2, 2).
struct Room {
  std::vector<Vec3> points;
  std::vector<InstanceMask> instances;

  Room() {
    for (int i = 0; i <= 40; ++i) {
      for (int j = 0; j <= 40; ++j) points.emplace_back(0.1 * i, 0.1 * j, 0.0);
    }
    add_block(1, Vec3(2, 2, 0.3), Vec3(0.05, 0.05, 0.05));
  }

  void add_block(int id, const Vec3& c, const Vec3& half, double step = 0.02) {
    InstanceMask m;
    m.id = id;
    m.label = "block" + std::to_string(id);
    for (double x = -half.x(); x <= half.x() + 1e-9; x += step) {
      for (double y = -half.y(); y <= half.y() + 1e-9; y += step) {
        for (double z = -half.z(); z <= half.z() + 1e-9; z += step) {
          m.point_indices.push_back(points.size());
          points.push_back(c + Vec3(x, y, z));
        }
      }
    }
    instances.push_back(std::move(m));
  }

  PointCloudScene scene() const { return PointCloudScene(points, {}, instances, 0); }
};

BodyCandidate at(double x, double y) {
  BodyCandidate b;
  b.position = Vec2(x, y);
  return b;
}

TEST(Validate, VacuousObstaclesAreValid) {
  const PointCloudScene s = Room().scene();
  const auto out = validate_candidates(std::vector{at(3, 2)}, s, 1, NavConfig{});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(out[0].valid);
  EXPECT_EQ(out[0].reason, Rejection::kNone);
  EXPECT_NEAR(out[0].d_item, 1.0, 1e-9);
  const AlignedBox& b = s.bounds();
  EXPECT_DOUBLE_EQ(out[0].d_obstacles, (b.max - b.min).norm());
  EXPECT_DOUBLE_EQ(out[0].s_body, out[0].d_obstacles - 0.5 * out[0].d_item);
}

TEST(Validate, OutsideSceneRejected) {
  const PointCloudScene s = Room().scene();
  const auto out = validate_candidates(std::vector{at(5, 2), at(0.1, 2)}, s, 1, NavConfig{});
  EXPECT_FALSE(out[0].valid);
  EXPECT_EQ(out[0].reason, Rejection::kOutOfScene);
  EXPECT_EQ(out[1].reason, Rejection::kOutOfScene);  // footprint crosses the boundary
}

TEST(Validate, CloseObstacleRejected) {
  Room room;
  room.add_block(2, Vec3(3.2, 2, 0.5), Vec3(0.05, 0.3, 0.3));
  NavConfig config;
  config.standing_height = 0.5;
  const auto out = validate_candidates(std::vector{at(3, 2)}, room.scene(), 1, config);
  EXPECT_EQ(out[0].reason, Rejection::kOutOfScene);
  EXPECT_NEAR(out[0].d_obstacles, 0.15, 1e-9);
}

TEST(Validate, LowObjectNextToBodyRejected) {
  Room room;
  room.add_block(2, Vec3(3.2, 2, 0.03), Vec3(0.1, 0.1, 0.03));  // 6 cm tall
  const auto out = validate_candidates(std::vector{at(3, 2)}, room.scene(), 1, NavConfig{});
  EXPECT_EQ(out[0].reason, Rejection::kOutOfScene);
  EXPECT_LT(out[0].d_obstacles, 0.35);
}

TEST(Validate, WallBlocksLineOfSight) {
  Room room;
  room.add_block(2, Vec3(2.5, 2, 0.6), Vec3(0.01, 0.4, 0.5));
  const auto out = validate_candidates(std::vector{at(3.1, 2), at(2, 3.1)}, room.scene(), 1, NavConfig{});
  EXPECT_FALSE(out[0].valid);
  EXPECT_EQ(out[0].reason, Rejection::kNoLineOfSight);
  EXPECT_TRUE(out[1].valid);
}

TEST(Validate, UnknownTarget) {
  EXPECT_THROW(validate_candidates(std::vector{at(3, 2)}, Room().scene(), 42, NavConfig{}), Error);
}

}  // namespace
}  // namespace mmplan
