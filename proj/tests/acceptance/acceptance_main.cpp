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

// Acceptance gate: prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "mmplan/drawer/drawer.hpp"
#include "mmplan/drawer/hungarian.hpp"
#include "mmplan/geometry/camera.hpp"
#include "mmplan/geometry/kdtree.hpp"
#include "mmplan/geometry/ransac.hpp"
#include "mmplan/geometry/sampling.hpp"
#include "mmplan/geometry/visibility.hpp"
#include "mmplan/optimizer/optimizer.hpp"
#include "mmplan/rng.hpp"
#include "mmplan/sim/batch.hpp"
#include "oracles.hpp"

namespace {

using namespace mmplan;
using Clock = std::chrono::steady_clock;

constexpr double kPi = std::numbers::pi;

int g_failures = 0;

void report(bool pass, const std::string& id, const std::string& detail) {
  std::printf("%s  %-28s %s\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

Vec3 random_unit(Rng& rng) {
  Vec3 v(rng.normal(), rng.normal(), rng.normal());
  while (v.norm() < 1e-9) v = Vec3(rng.normal(), rng.normal(), rng.normal());
  return v.normalized();
}

Vec3 random_vec(Rng& rng, double lo, double hi) {
  return {rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)};
}

Mat3 random_rotation(Rng& rng) {
  return Eigen::AngleAxisd(rng.uniform(0, 2 * kPi), random_unit(rng)).toRotationMatrix();
}

double angle_deg(const Vec3& a, const Vec3& b) {
  return std::acos(std::clamp(std::abs(a.normalized().dot(b.normalized())), 0.0, 1.0)) * 180 / kPi;
}

void optimizer_criteria() {
  Rng rng(1001);
  int matches = 0;
  std::vector<double> times;
  for (int inst = 0; inst < 100; ++inst) {
    std::vector<GraspCandidate> grasps(50);
    for (GraspCandidate& g : grasps) {
      g.pose.rotation = random_rotation(rng);
      g.pose.translation = random_vec(rng, -0.1, 0.1);
      g.score = rng.uniform();
    }
    std::vector<BodyCandidate> bodies(200);
    for (BodyCandidate& b : bodies) {
      b.position = Vec2(rng.uniform(-2, 2), rng.uniform(-2, 2));
      b.camera_height = 0.8;
      b.s_body = rng.uniform(-1, 2);
      b.valid = true;
    }
    const Vec3 target(rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2), rng.uniform(0.2, 1.0));
    const OptimizerWeights w{};  // lambda_body 0.01, lambda_align 0.02, T 1
    const auto t0 = Clock::now();
    const JointSelection got = select_best(grasps, bodies, target, w);
    times.push_back(seconds_since(t0));
    const JointSelection want = oracle::exhaustive_select(grasps, bodies, target, w);
    if (got.grasp_index == want.grasp_index && got.body_index == want.body_index && got.s == want.s) {
      ++matches;
    }
  }
  std::sort(times.begin(), times.end());
  report(matches == 100, "optimizer.oracle", fmt("%d/100 instances (50x200) match the double loop", matches));
  const double median_ms = 1e3 * times[times.size() / 2];
  report(median_ms < 10.0, "optimizer.runtime",
         fmt("median %.3f ms, max %.3f ms per 10^4 pairs (limit 10 ms)", median_ms, 1e3 * times.back()));
}

void hungarian_criteria() {
  Rng rng(1002);
  int exact = 0;
  double solve_s = 0;
  const double kappa = 10.0;
  for (int inst = 0; inst < 500; ++inst) {
    const int n = 1 + static_cast<int>(rng.index(6));
    const int m = 1 + static_cast<int>(rng.index(6));
    std::vector<Detection2D> handles(n), drawers(m);
    for (auto& h : handles) {
      const double x = rng.uniform(0, 200), y = rng.uniform(0, 200);
      h = {DetectionClass::kHandle, {x, y, x + rng.uniform(5, 40), y + rng.uniform(5, 20)}, rng.uniform(0.5, 1)};
    }
    for (auto& d : drawers) {
      const double x = rng.uniform(-20, 200), y = rng.uniform(-20, 200);
      d = {DetectionClass::kDrawer, {x, y, x + rng.uniform(30, 120), y + rng.uniform(20, 80)}, rng.uniform(0.5, 1)};
    }
    Eigen::MatrixXd cost(n, m);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) cost(i, j) = matching_cost(handles[i], drawers[j], kappa);
    }
    const auto t0 = Clock::now();
    const std::vector<int> a = solve_assignment(cost);
    solve_s += seconds_since(t0);
    // Reference: brute force over the orientation with fewer rows.
    const double want = n <= m ? oracle::min_assignment_cost(cost)
                               : oracle::min_assignment_cost(cost.transpose());
    int assigned = 0;
    for (int j : a) assigned += j >= 0;
    if (assigned == std::min(n, m) && std::abs(assignment_cost(cost, a) - want) <= 1e-9) ++exact;
  }
  report(exact == 500, "hungarian.oracle", fmt("%d/500 instances equal the permutation minimum", exact));
  report(solve_s < 1.0, "hungarian.runtime", fmt("%.4f s for 500 solves (limit 1 s)", solve_s));
}

void ioa_criteria() {
  const BBox2D h{10, 10, 20, 20};
  const double full = ioa(h, {0, 0, 100, 100});
  const double none = ioa(h, {50, 50, 60, 60});
  const double half = ioa(h, {15, 0, 100, 100});
  const bool ok = std::abs(full - 1.0) <= 1e-12 && std::abs(none) <= 1e-12 && std::abs(half - 0.5) <= 1e-12;
  report(ok, "ioa.analytic", fmt("containment %.15g, disjoint %.15g, half %.15g (tol 1e-12)", full, none, half));
}

void ransac_criteria() {
  Rng rng(1003);
  int within = 0;
  double worst = 0;
  const auto t0 = Clock::now();
  for (int trial = 0; trial < 100; ++trial) {
    // Drawer front: 0.6 m x 0.3 m rectangle with a random orientation.
    const Mat3 r = random_rotation(rng);
    const Vec3 n = r.col(2);
    const Vec3 c = random_vec(rng, -1, 1);
    std::vector<Vec3> pts;
    for (int i = 0; i < 1400; ++i) {
      pts.push_back(c + r.col(0) * rng.uniform(-0.3, 0.3) + r.col(1) * rng.uniform(-0.15, 0.15) +
                    n * rng.normal(0, 0.002));
    }
    for (int i = 0; i < 600; ++i) pts.push_back(c + random_vec(rng, -0.4, 0.4));
    const Plane p = ransac_plane(pts, {0.005, 1000, 0.3}, derive_seed(77, trial));
    const double a = angle_deg(p.normal, n);
    worst = std::max(worst, a);
    within += a < 2.0;
  }
  const double secs = seconds_since(t0);
  report(within >= 95, "ransac.axis", fmt("%d/100 trials within 2 deg (worst %.3f deg)", within, worst));
  report(secs < 5.0, "ransac.runtime", fmt("%.3f s for 100 fits of 2000 points (limit 5 s)", secs));
}

void backprojection_criteria() {
  Rng rng(1004);
  int pass = 0;
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    CameraIntrinsics k;
    k.width = 640;
    k.height = 480;
    k.fx = rng.uniform(200, 900);
    k.fy = rng.uniform(200, 900);
    k.cx = rng.uniform(280, 360);
    k.cy = rng.uniform(200, 280);
    const Pose pose{random_rotation(rng), random_vec(rng, -3, 3)};
    const double u = rng.uniform(0, 639), v = rng.uniform(0, 479), d = rng.uniform(0.1, 10);
    const PixelProjection p = project(backproject(u, v, d, k, pose), k, pose);
    const double err = std::hypot(p.u - u, p.v - v);
    worst = std::max(worst, err);
    pass += err < 1e-6;
  }
  report(pass == 1000, "camera.round_trip", fmt("%d/1000 within 1e-6 px (worst %.2e px)", pass, worst));
}

void visibility_criteria() {
  Rng rng(1005);
  int agree = 0;
  for (int scene = 0; scene < 100; ++scene) {
    std::vector<Vec3> pts;
    const int n = 5 + static_cast<int>(rng.index(60));
    for (int i = 0; i < n; ++i) pts.push_back(random_vec(rng, -1, 1));
    const KdTree tree(pts);
    const Vec3 from = random_vec(rng, -1.2, 1.2);
    const Vec3 to = random_vec(rng, -1.2, 1.2);
    const double clearance = rng.uniform(0.02, 0.2);
    const double exclusion = rng.uniform(0.0, 0.3);
    const bool visible = line_of_sight(from, to, tree, clearance, exclusion);
    agree += visible == !oracle::dense_blocked(pts, from, to, clearance, exclusion);
  }
  report(agree == 100, "visibility.dense_oracle", fmt("%d/100 scenes agree with 1 mm sampling", agree));
}

void fps_criteria() {
  Rng rng(1006);
  int exact = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.index(50);
    std::vector<Vec3> c;
    for (std::size_t i = 0; i < n; ++i) {
      // Alternate between generic and tie-heavy grid inputs.
      c.push_back(trial % 2 ? random_vec(rng, -2, 2)
                            : Vec3(static_cast<double>(rng.index(4)), static_cast<double>(rng.index(4)), 0.0));
    }
    const std::size_t k = 1 + rng.index(n);
    const std::size_t start = rng.index(n);
    exact += farthest_point_sample(c, k, start) == oracle::greedy_fps(c, k, start);
  }
  report(exact == 100, "fps.greedy_oracle", fmt("%d/100 index sequences match", exact));
}

bool stage_sums(const sim::BatchSummary& s) {
  std::size_t total = s.overall.successes;
  for (std::size_t f : s.stage_failures) total += f;
  return total == s.episodes;
}

std::string failures_text(const sim::BatchSummary& s) {
  return fmt("loc %zu, det %zu, nav %zu, manip %zu", s.stage_failures[0], s.stage_failures[1],
             s.stage_failures[2], s.stage_failures[3]);
}

bool same_reports(const std::vector<sim::EpisodeReport>& a, const std::vector<sim::EpisodeReport>& b) {
  if (a.size() > b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sim::to_json(a[i]).dump() != sim::to_json(b[i]).dump()) return false;
  }
  return true;
}

void search_criteria() {
  const sim::SceneSpec spec = sim::default_search_spec();
  sim::PipelineConfig reference;  // reference noise model
  const std::uint64_t seed = 2024;

  auto t0 = Clock::now();
  const sim::BatchResult batch = sim::run_batch(sim::Task::kSearch, spec, reference, 200, seed);
  const double secs = seconds_since(t0);
  const auto& s = batch.summary;
  const auto [lo, hi] = s.overall.wilson();
  report(s.overall.rate() >= 0.80, "search.reference_success",
         fmt("%zu/200 = %.3f (95%% CI %.3f-%.3f; need >= 0.80); failures: %s", s.overall.successes,
             s.overall.rate(), lo, hi, failures_text(s).c_str()));
  report(secs < 300.0, "search.runtime", fmt("%.1f s for 200 episodes (limit 300 s)", secs));
  report(stage_sums(s), "search.stage_accounting", "episodes = successes + first-stage failures");

  sim::PipelineConfig noiseless = reference;
  noiseless.noise = sim::NoiseModel::noiseless();
  const sim::BatchResult clean = sim::run_batch(sim::Task::kSearch, spec, noiseless, 200, seed);
  report(clean.summary.overall.successes == 200, "search.noiseless_success",
         fmt("%zu/200 (need 200); failures: %s", clean.summary.overall.successes,
             failures_text(clean.summary).c_str()));

  sim::PipelineConfig noisier = reference;
  noisier.noise.depth_sigma = 0.010;
  const sim::BatchResult worse = sim::run_batch(sim::Task::kSearch, spec, noisier, 200, seed);
  const double width = 2 * s.overall.half_width();
  report(worse.summary.overall.rate() <= s.overall.rate() + width, "search.depth_noise_monotone",
         fmt("depth sigma 5 mm %.3f, 10 mm %.3f (allowed rise %.3f)", s.overall.rate(),
             worse.summary.overall.rate(), width));

  t0 = Clock::now();
  const sim::BatchResult again = sim::run_batch(sim::Task::kSearch, spec, reference, 12, seed);
  report(same_reports(again.reports, batch.reports), "search.determinism",
         "12-episode rerun reproduces the first 12 reports byte for byte");
}

void grasp_criteria() {
  const sim::SceneSpec spec = sim::default_grasp_spec();
  const sim::PipelineConfig reference;
  const std::uint64_t seed = 4048;
  const sim::BatchResult batch = sim::run_batch(sim::Task::kGrasp, spec, reference, 200, seed);
  const auto& tiers = batch.summary.by_object_tier;
  bool monotone = true;
  std::string detail;
  for (int t = 0; t < 3; ++t) {
    const auto [lo, hi] = tiers[t].wilson();
    detail += fmt("%s %zu/%zu=%.3f [%.3f,%.3f]  ", std::string(sim::to_string(static_cast<sim::Tier>(t))).c_str(),
                  tiers[t].successes, tiers[t].trials, tiers[t].rate(), lo, hi);
    // The harder tier may not exceed the easier tier's upper 95% bound.
    if (t > 0 && tiers[t].rate() > tiers[t - 1].wilson().second) monotone = false;
  }
  report(monotone, "grasp.tier_monotone", detail);
  report(stage_sums(batch.summary), "grasp.stage_accounting",
         fmt("overall %.3f; failures: %s", batch.summary.overall.rate(), failures_text(batch.summary).c_str()));

  sim::PipelineConfig noiseless = reference;
  noiseless.noise = sim::NoiseModel::noiseless();
  const sim::BatchResult clean = sim::run_batch(sim::Task::kGrasp, spec, noiseless, 200, seed);
  const sim::Proportion& easy = clean.summary.by_object_tier[0];
  report(easy.trials > 0 && easy.successes == easy.trials, "grasp.noiseless_easy",
         fmt("%zu/%zu easy-tier episodes succeed (need all)", easy.successes, easy.trials));

  const sim::BatchResult again = sim::run_batch(sim::Task::kGrasp, spec, reference, 200, seed);
  report(same_reports(again.reports, batch.reports) &&
             sim::to_json(again.summary).dump() == sim::to_json(batch.summary).dump(),
         "grasp.determinism", "200-episode rerun is byte-identical");
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  optimizer_criteria();
  hungarian_criteria();
  ioa_criteria();
  ransac_criteria();
  backprojection_criteria();
  visibility_criteria();
  fps_criteria();
  grasp_criteria();
  search_criteria();
  std::printf("%d criteria failed, %.1f s total\n", g_failures, seconds_since(t0));
  return g_failures == 0 ? 0 : 1;
}
