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

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "mmplan/config.hpp"
#include "mmplan/error.hpp"
#include "support.hpp"

namespace mmplan {
namespace {

using nlohmann::json;

std::string error_text(const json& doc) {
  try {
    run_config_from_json(doc);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidConfig);
    return e.what();
  }
  ADD_FAILURE() << "expected an error for " << doc.dump();
  return "";
}

TEST(RunConfig, EmptyDocumentGivesDefaults) {
  const RunConfig rc = run_config_from_json(json::object());
  EXPECT_EQ(rc.seed, 0u);
  EXPECT_EQ(rc.pipeline.nav.radii, (std::vector<double>{0.7, 0.9, 1.1}));
  EXPECT_DOUBLE_EQ(rc.pipeline.optimizer.lambda_body, 0.01);
  EXPECT_DOUBLE_EQ(rc.pipeline.optimizer.lambda_align, 0.02);
  EXPECT_DOUBLE_EQ(rc.pipeline.drawer.match.kappa, 10.0);
  EXPECT_EQ(rc.pipeline.grasp.top_k, 10);
}

TEST(RunConfig, OverlaysNestedValues) {
  const RunConfig rc = run_config_from_json(
      {{"seed", 42},
       {"nav", {{"lambda_item", 0.3}, {"radii", {0.5, 1.0}}}},
       {"drawer", {{"ransac", {{"threshold", 0.01}}}}},
       {"noise", {{"depth_dropout", 0.2}}}});
  EXPECT_EQ(rc.seed, 42u);
  EXPECT_DOUBLE_EQ(rc.pipeline.nav.lambda_item, 0.3);
  EXPECT_EQ(rc.pipeline.nav.radii.size(), 2u);
  EXPECT_DOUBLE_EQ(rc.pipeline.drawer.ransac.threshold, 0.01);
  EXPECT_EQ(rc.pipeline.drawer.ransac.iterations, 1000);
  EXPECT_DOUBLE_EQ(rc.pipeline.noise.depth_dropout, 0.2);
}

TEST(RunConfig, RoundTrip) {
  RunConfig rc = run_config_from_json({{"seed", 7}, {"sim", {{"axis_tol_deg", 4.0}}}});
  const json doc = to_json(rc);
  EXPECT_EQ(to_json(run_config_from_json(doc)), doc);
}

TEST(RunConfig, ErrorsNameTheKey) {
  EXPECT_NE(error_text({{"nav", {{"bogus", 1}}}}).find("nav.bogus"), std::string::npos);
  EXPECT_NE(error_text({{"drawer", {{"ransac", {{"iters", 1}}}}}}).find("drawer.ransac.iters"),
            std::string::npos);
  EXPECT_NE(error_text({{"nav", {{"lambda_item", "high"}}}}).find("nav.lambda_item"),
            std::string::npos);
  EXPECT_NE(error_text({{"sim", 3}}).find("sim"), std::string::npos);
  EXPECT_FALSE(error_text({{"nav", {{"footprint_radius", -1.0}}}}).empty());
  EXPECT_FALSE(error_text({{"noise", {{"detection_dropout", 2.0}}}}).empty());
  EXPECT_FALSE(error_text(json::array()).empty());
}

}  // namespace
}  // namespace mmplan
