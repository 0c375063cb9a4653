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

#include <gtest/gtest.h>

#include "mmplan/error.hpp"
#include "mmplan/optimizer/optimizer.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace mmplan {
namespace {

using testing::random_rotation;

GraspCandidate grasp_with_approach(const Vec3& approach, double score) {
  GraspCandidate g;
  const Vec3 a = approach.normalized();
  const Vec3 helper = std::abs(a.z()) < 0.9 ? Vec3::UnitZ() : Vec3::UnitX();
  g.pose.rotation.col(0) = a;
  g.pose.rotation.col(1) = a.cross(helper).normalized();
  g.pose.rotation.col(2) = g.pose.rotation.col(0).cross(g.pose.rotation.col(1));
  g.score = score;
  return g;
}

BodyCandidate body_at(double x, double y, double s_body) {
  BodyCandidate b;
  b.position = Vec2(x, y);
  b.camera_height = 0.8;
  b.s_body = s_body;
  b.valid = true;
  return b;
}

TEST(AlignScore, Reference) {
  const BodyCandidate b = body_at(0, 0, 0);
  const Vec3 target(1, 0, 0.8);  // straight ahead of the camera
  EXPECT_NEAR(align_score(b, grasp_with_approach(Vec3::UnitX(), 1), target, 1.0), std::tanh(1.0), 1e-15);
  EXPECT_NEAR(align_score(b, grasp_with_approach(Vec3::UnitX(), 1), target, 1.0), 0.761594, 1e-6);
  EXPECT_NEAR(align_score(b, grasp_with_approach(Vec3::UnitY(), 1), target, 1.0), 0.0, 1e-15);
  EXPECT_NEAR(align_score(b, grasp_with_approach(-Vec3::UnitX(), 1), target, 1.0), -0.761594, 1e-6);
  EXPECT_NEAR(align_score(b, grasp_with_approach(Vec3::UnitX(), 1), target, 2.0), std::tanh(2.0), 1e-15);
  EXPECT_THROW(align_score(b, grasp_with_approach(Vec3::UnitX(), 1), Vec3(0, 0, 0.8), 1.0), Error);
}

TEST(SelectBest, SinglePairArithmetic) {
  const auto g = grasp_with_approach(Vec3(1, 1, -1), 0.7);
  const auto b = body_at(-1, 0, 0.4);
  const Vec3 target(0.2, 0.1, 0.3);
  const JointSelection sel = select_best(std::vector{g}, std::vector{b}, target, OptimizerWeights{});
  const double s_align = align_score(b, g, target, 1.0);
  EXPECT_EQ(sel.grasp_index, 0u);
  EXPECT_EQ(sel.body_index, 0u);
  EXPECT_NEAR(sel.s, 0.7 + 0.01 * 0.4 + 0.02 * s_align, 1e-15);
  EXPECT_DOUBLE_EQ(sel.s_grasp, 0.7);
  EXPECT_DOUBLE_EQ(sel.s_body, 0.4);
}

TEST(SelectBest, TiesGoToLowerIndex) {
  const auto g = grasp_with_approach(Vec3(1, 0, 0), 0.5);
  const auto b = body_at(-1, 0, 0.2);
  const JointSelection sel =
      select_best(std::vector{g, g}, std::vector{b, b}, Vec3(0, 0, 0.5), OptimizerWeights{});
  EXPECT_EQ(sel.grasp_index, 0u);
  EXPECT_EQ(sel.body_index, 0u);
}

TEST(SelectBest, Errors) {
  const auto g = grasp_with_approach(Vec3::UnitX(), 0.5);
  auto b = body_at(-1, 0, 0.2);
  EXPECT_THROW(select_best({}, std::vector{b}, Vec3::Zero(), {}), Error);
  EXPECT_THROW(select_best(std::vector{g}, {}, Vec3::Zero(), {}), Error);
  b.valid = false;
  EXPECT_THROW(select_best(std::vector{g}, std::vector{b}, Vec3::Zero(), {}), Error);
  OptimizerWeights w;
  w.temperature = 0;
  EXPECT_THROW(w.validate(), Error);
}

TEST(SelectBest, MatchesExhaustiveOracle) {
  Rng rng(99);
  for (int inst = 0; inst < 20; ++inst) {
    std::vector<GraspCandidate> grasps;
    std::vector<BodyCandidate> bodies;
    for (int i = 0; i < 50; ++i) {
      GraspCandidate g;
      g.pose.rotation = random_rotation(rng);
      g.score = rng.uniform();
      grasps.push_back(g);
    }
    for (int i = 0; i < 200; ++i) {
      bodies.push_back(body_at(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-1, 2)));
    }
    const Vec3 target(rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2), rng.uniform(0, 1));
    const JointSelection a = select_best(grasps, bodies, target, OptimizerWeights{});
    const JointSelection b = oracle::exhaustive_select(grasps, bodies, target, OptimizerWeights{});
    EXPECT_EQ(a.grasp_index, b.grasp_index);
    EXPECT_EQ(a.body_index, b.body_index);
    EXPECT_EQ(a.s, b.s);
  }
}

}  // namespace
}  // namespace mmplan
