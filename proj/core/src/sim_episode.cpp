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

#include "mmplan/sim/episode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mmplan/error.hpp"
#include "mmplan/geometry/sampling.hpp"
#include "mmplan/rng.hpp"

namespace mmplan::sim {
namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;
constexpr int kSpuriousPerBatch = 3;

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

void pass(StageOutcome& s, double time_s) {
  s.status = StageStatus::kPass;
  s.time_s = time_s;
}

void fail(StageOutcome& s, std::string reason, double time_s) {
  s.status = StageStatus::kFail;
  s.reason = std::move(reason);
  s.time_s = time_s;
}

// Whether the robot, modelled as an upright cylinder, intersects any object
// or piece of furniture (the floor slab is ignored).
std::optional<std::string> body_collision(const SyntheticScene& scene, const Vec2& position,
                                          double radius, double height) {
  auto hits = [&](const Shape& shape) {
    for (double z = 0.02; z <= height + 1e-9; z += 0.05) {
      if (distance(shape, Vec3(position.x(), position.y(), z)) < radius) return true;
    }
    return false;
  };
  for (std::size_t i = 1; i < scene.structure.size(); ++i) {
    if (hits(scene.structure[i])) return std::string("wall");
  }
  for (const SimObject& o : scene.objects) {
    if (hits(o.shape)) return o.label;
  }
  for (const SimObstacle& o : scene.obstacles) {
    if (hits(o.box)) return o.label;
  }
  for (const SimCabinet& c : scene.cabinets) {
    if (hits(c.body)) return c.label;
  }
  return std::nullopt;
}

// Simulated grasp network output: perturbed ground-truth grasps plus
// off-object hallucinations, expressed in each sweep's rotated frame.
std::vector<GraspBatch> propose_grasps(const SimObject& object, const Vec3& centroid,
                                       const PipelineConfig& config, Rng& rng) {
  const auto truth = feasible_grasps(object, config.sim.gripper_max_width);
  const auto tier = static_cast<std::size_t>(object.grasp_tier);
  const int per_batch = config.sim.proposals_per_tier[tier];
  const double sigma = config.noise.grasp_sigma * config.sim.tier_noise_scale[tier];
  const Vec3 top(centroid.x(), centroid.y(), shape_top(object.shape));
  const double reach = footprint_radius(object.shape);

  std::vector<GraspBatch> batches;
  for (const Mat3& r : sweep_rotations(config.grasp.sweep_count)) {
    GraspBatch batch;
    batch.rotation = r;
    auto emit = [&](GraspCandidate g) {
      g.pose.translation = centroid + r * (g.pose.translation - centroid);
      g.pose.rotation = r * g.pose.rotation;
      batch.candidates.push_back(g);
    };
    for (int i = 0; i < per_batch && !truth.empty(); ++i) {
      GraspCandidate g = truth[rng.index(truth.size())];
      const Vec3 noise(rng.normal(), rng.normal(), rng.normal());
      g.pose.translation += sigma * noise;
      const double error = sigma * noise.norm();
      g.score = rng.uniform(0.3, 1.0) * (1.0 - 0.5 * std::min(error / 0.04, 1.0));
      emit(g);
    }
    for (int i = 0; i < kSpuriousPerBatch; ++i) {
      const double theta = rng.uniform(0.0, 2 * kPi);
      const double dist = reach + rng.uniform(0.08, 0.2);
      GraspCandidate g;
      g.pose = Pose{look_rotation(Vec3(0, 0, -1), Vec3(std::cos(theta), std::sin(theta), 0)),
                    top + Vec3(dist * std::cos(theta), dist * std::sin(theta), 0.0)};
      g.width = config.sim.gripper_max_width / 2;
      g.score = rng.uniform(-0.2, 0.6);
      emit(g);
    }
    batches.push_back(std::move(batch));
  }
  return batches;
}

double angle_deg(const Vec3& a, const Vec3& b) {
  const double c = std::clamp(a.normalized().dot(b.normalized()), -1.0, 1.0);
  return std::acos(c) * 180.0 / kPi;
}

}  // namespace

void SimConfig::validate() const {
  auto bad = [](const std::string& key, const std::string& what) {
    throw Error(ErrorCode::kInvalidConfig, "'sim." + key + "' " + what);
  };
  if (!(camera.fx > 0 && camera.fy > 0) || camera.width <= 0 || camera.height <= 0) {
    bad("camera", "needs positive focal lengths and image size");
  }
  if (!(min_similarity >= -1 && min_similarity <= 1)) bad("min_similarity", "must be in [-1, 1]");
  if (!(gripper_max_width > 0)) bad("gripper_max_width", "must be positive");
  for (int n : proposals_per_tier) {
    if (n < 0) bad("proposals_per_tier", "must be >= 0");
  }
  for (double s : tier_noise_scale) {
    if (!(s >= 0)) bad("tier_noise_scale", "must be >= 0");
  }
  if (!(grasp_center_tol > 0)) bad("grasp_center_tol", "must be positive");
  if (!(axis_tol_deg > 0)) bad("axis_tol_deg", "must be positive");
  if (!(handle_tol > 0)) bad("handle_tol", "must be positive");
  if (viewpoint_count < 1) bad("viewpoint_count", "must be >= 1");
  if (views_per_cabinet < 1 || views_per_cabinet > viewpoint_count) {
    bad("views_per_cabinet", "must be in [1, viewpoint_count]");
  }
  if (!(viewpoint_span_deg >= 0 && viewpoint_span_deg < 360)) {
    bad("viewpoint_span_deg", "must be in [0, 360)");
  }
  if (!(viewpoint_radius > 0)) bad("viewpoint_radius", "must be positive");
  if (!(viewpoint_height > 0)) bad("viewpoint_height", "must be positive");
  if (!(close_view_distance > 0)) bad("close_view_distance", "must be positive");
}

void PipelineConfig::validate() const {
  nav.validate();
  optimizer.validate();
  drawer.validate();
  sim.validate();
  noise.validate();
  if (!(grasp.on_object_tol > 0)) {
    throw Error(ErrorCode::kInvalidConfig, "'grasp.on_object_tol' must be positive");
  }
  if (grasp.sweep_count < 1) {
    throw Error(ErrorCode::kInvalidConfig, "'grasp.sweep_count' must be >= 1");
  }
  if (grasp.top_k < 1) throw Error(ErrorCode::kInvalidConfig, "'grasp.top_k' must be >= 1");
  if (!(grasp.isolate_padding >= 0)) {
    throw Error(ErrorCode::kInvalidConfig, "'grasp.isolate_padding' must be >= 0");
  }
}

std::string_view to_string(Task t) { return t == Task::kGrasp ? "grasp" : "search"; }

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::kLocalization: return "localization";
    case Stage::kDetection: return "detection";
    case Stage::kNavigation: return "navigation";
    case Stage::kManipulation: return "manipulation";
  }
  return "localization";
}

std::string_view to_string(StageStatus s) {
  switch (s) {
    case StageStatus::kPass: return "pass";
    case StageStatus::kFail: return "fail";
    case StageStatus::kNotReached: return "not_reached";
  }
  return "not_reached";
}

std::optional<Stage> EpisodeReport::failed_stage() const {
  for (std::size_t i = 0; i < stages.size(); ++i) {
    if (stages[i].status == StageStatus::kFail) return static_cast<Stage>(i);
  }
  return std::nullopt;
}

json to_json(const EpisodeReport& report) {
  json stages = json::array();
  for (std::size_t i = 0; i < report.stages.size(); ++i) {
    const StageOutcome& s = report.stages[i];
    stages.push_back({{"stage", std::string(to_string(static_cast<Stage>(i)))},
                      {"status", std::string(to_string(s.status))},
                      {"reason", s.reason},
                      {"time_s", s.time_s}});
  }
  const auto failed = report.failed_stage();
  return {{"task", std::string(to_string(report.task))},
          {"seed", report.seed},
          {"query", report.query},
          {"success", report.success},
          {"failed_stage", failed ? json(std::string(to_string(*failed))) : json(nullptr)},
          {"stages", std::move(stages)},
          {"details", report.details}};
}

EpisodeReport run_grasp_episode(const SyntheticScene& scene, const std::string& query,
                                const PipelineConfig& config, std::uint64_t seed) {
  config.validate();
  EpisodeReport report;
  report.task = Task::kGrasp;
  report.seed = seed;
  report.query = query;
  const LatencyModel& lat = config.sim.latency;
  auto& [loc, det, nav, manip] = report.stages;
  const PointCloudScene& cloud = *scene.cloud;

  const SimObject* truth = scene.object_by_label(query);
  if (truth != nullptr) {
    report.details["grasp_tier"] = std::string(to_string(truth->grasp_tier));
    report.details["placement"] = std::string(to_string(truth->placement));
  }
  const auto code = scene.label_embedding(query);
  const auto ranked = query_instance(cloud, code);
  if (ranked.empty() || ranked.front().similarity < config.sim.min_similarity) {
    fail(loc, "no instance matches the query", lat.localization);
    return report;
  }
  const int target = ranked.front().instance_id;
  const Vec3 centroid = ranked.front().centroid;
  report.details["target_instance"] = target;
  report.details["similarity"] = ranked.front().similarity;
  if (truth == nullptr || truth->instance_id != target) {
    fail(loc, "localized the wrong instance", lat.localization);
    return report;
  }
  pass(loc, lat.localization);

  Rng rng(derive_seed(seed, "grasp-proposals"));
  const auto object = isolate_object(cloud, target, config.grasp.isolate_padding);
  auto batches = propose_grasps(*truth, centroid, config, rng);
  for (GraspBatch& b : batches) {
    b.candidates = top_k(b.candidates, static_cast<std::size_t>(config.grasp.top_k));
  }
  const auto merged = merge_rotation_sweeps(batches, centroid);
  const auto grasps = filter_grasps(merged, object.object_points, config.grasp.on_object_tol);
  report.details["grasps_proposed"] = merged.size();
  report.details["grasps_filtered"] = grasps.size();
  if (grasps.empty()) {
    fail(det, "no grasp survived filtering", lat.grasp_estimation);
    return report;
  }
  pass(det, lat.grasp_estimation);

  const auto sampled = sample_positions(centroid, config.nav, cloud.floor_z());
  const auto checked = validate_candidates(sampled, cloud, target, config.nav);
  std::vector<BodyCandidate> bodies;
  std::copy_if(checked.begin(), checked.end(), std::back_inserter(bodies),
               [](const BodyCandidate& b) { return b.valid; });
  report.details["bodies_sampled"] = sampled.size();
  report.details["bodies_valid"] = bodies.size();
  if (bodies.empty()) {
    fail(nav, "no valid body position", lat.navigation);
    return report;
  }
  pass(nav, lat.navigation);

  const JointSelection sel = select_best(grasps, bodies, centroid, config.optimizer);
  const GraspCandidate& g = grasps[sel.grasp_index];
  const BodyCandidate& body = bodies[sel.body_index];
  double error = std::numeric_limits<double>::infinity();
  for (const GraspCandidate& t : feasible_grasps(*truth, config.sim.gripper_max_width)) {
    error = std::min(error, (t.center() - g.center()).norm());
  }
  report.details["selection"] = {{"grasp_center", vec_json(g.center())},
                                 {"grasp_score", g.score},
                                 {"body_position", {body.position.x(), body.position.y()}},
                                 {"body_yaw", body.yaw},
                                 {"s", sel.s},
                                 {"s_grasp", sel.s_grasp},
                                 {"s_body", sel.s_body},
                                 {"s_align", sel.s_align}};
  report.details["grasp_error"] = std::isfinite(error) ? json(error) : json(nullptr);
  const double manip_time = lat.joint_optimization;
  if (!(error <= config.sim.grasp_center_tol)) {
    fail(manip, "selected grasp misses the object", manip_time);
    return report;
  }
  if (const auto hit = body_collision(scene, body.position, config.nav.footprint_radius,
                                      config.nav.camera_height)) {
    fail(manip, "body collides with " + *hit, manip_time);
    return report;
  }
  pass(manip, manip_time);
  report.success = true;
  return report;
}

std::vector<Pose> viewpoint_arc(const SyntheticScene& scene, const Vec3& cabinet_centroid,
                                const SimConfig& config) {
  const Vec2 room_center = scene.spec.room / 2;
  Vec2 dir = room_center - cabinet_centroid.head<2>();
  if (dir.norm() < 1e-9) dir = Vec2::UnitX();
  const double base = std::atan2(dir.y(), dir.x());
  const double span = config.viewpoint_span_deg * kPi / 180.0;
  const int n = config.viewpoint_count;
  constexpr double margin = 0.2;
  std::vector<Pose> out;
  for (int i = 0; i < n; ++i) {
    const double theta = n == 1 ? base : base - span / 2 + span * i / (n - 1);
    Vec3 eye(cabinet_centroid.x() + config.viewpoint_radius * std::cos(theta),
             cabinet_centroid.y() + config.viewpoint_radius * std::sin(theta),
             config.viewpoint_height);
    eye.x() = std::clamp(eye.x(), margin, scene.spec.room.x() - margin);
    eye.y() = std::clamp(eye.y(), margin, scene.spec.room.y() - margin);
    out.push_back(look_at(eye, cabinet_centroid));
  }
  return out;
}

EpisodeReport run_search_episode(const SyntheticScene& scene, const std::string& query,
                                 const PipelineConfig& config, std::uint64_t seed) {
  config.validate();
  EpisodeReport report;
  report.task = Task::kSearch;
  report.seed = seed;
  report.query = query;
  const LatencyModel& lat = config.sim.latency;
  auto& [loc, det, nav, manip] = report.stages;
  const PointCloudScene& cloud = *scene.cloud;
  const CameraIntrinsics& k = config.sim.camera;

  // Ground truth: the drawer holding the item.
  const SimCabinet* true_cabinet = nullptr;
  std::size_t true_drawer = 0;
  for (const SimCabinet& c : scene.cabinets) {
    for (std::size_t d = 0; d < c.drawers.size(); ++d) {
      if (!query.empty() && c.drawers[d].content == query) {
        true_cabinet = &c;
        true_drawer = d;
      }
    }
  }

  std::vector<QueryResult> storage;
  if (!scene.cabinets.empty()) {
    for (const QueryResult& r : query_instance(cloud, scene.label_embedding(scene.cabinets[0].label))) {
      if (r.similarity >= config.sim.min_similarity) storage.push_back(r);
    }
  }
  report.details["storage_instances"] = json::array();
  for (const QueryResult& r : storage) report.details["storage_instances"].push_back(r.instance_id);
  if (storage.empty()) {
    fail(loc, "no storage furniture found", lat.localization);
    return report;
  }
  if (true_cabinet == nullptr) {
    fail(loc, "the item is not in any drawer", lat.localization);
    return report;
  }
  if (std::none_of(storage.begin(), storage.end(), [&](const QueryResult& r) {
        return r.instance_id == true_cabinet->instance_id;
      })) {
    fail(loc, "the cabinet holding the item was not localized", lat.localization);
    return report;
  }
  pass(loc, lat.localization);
  const Vec3 true_handle = true_cabinet->drawers[true_drawer].handle_point;
  report.details["true_handle"] = vec_json(true_handle);

  std::vector<DetectionFrame> frames;
  for (const QueryResult& r : storage) {
    const auto arc = viewpoint_arc(scene, r.centroid, config.sim);
    std::vector<Vec3> eyes;
    for (const Pose& p : arc) eyes.push_back(p.translation);
    const auto chosen = farthest_point_sample(eyes, static_cast<std::size_t>(config.sim.views_per_cabinet),
                                              eyes.size() / 2);
    for (std::size_t idx : chosen) {
      const std::uint64_t view_seed = derive_seed(derive_seed(seed, "view"), frames.size());
      DetectionFrame f;
      f.intrinsics = k;
      f.cam_pose = arc[idx];
      f.depth = render_depth(scene, k, f.cam_pose, config.noise, derive_seed(view_seed, "depth"));
      f.detections =
          oracle_detector(scene, k, f.cam_pose, config.noise, derive_seed(view_seed, "boxes"));
      frames.push_back(std::move(f));
    }
  }
  const auto targets = detect_drawers(frames, config.drawer, derive_seed(seed, "fuse"));
  const double det_time = lat.drawer_detection * static_cast<double>(frames.size());
  report.details["views"] = frames.size();
  report.details["targets"] = targets.size();
  auto is_true = [&](const DrawerTarget& t) {
    return (t.handle_center - true_handle).norm() <= config.drawer.cluster_radius;
  };
  if (std::none_of(targets.begin(), targets.end(), is_true)) {
    fail(det, "the drawer holding the item was not detected", det_time);
    return report;
  }
  pass(det, det_time);

  // Visit targets by confidence until the item turns up.
  json attempts = json::array();
  double nav_time = 0;
  double manip_time = 0;
  for (std::size_t ti = 0; ti < targets.size(); ++ti) {
    const DrawerTarget& t = targets[ti];
    const bool target_is_true = is_true(t);
    json attempt = {{"handle", vec_json(t.handle_center)}, {"axis", vec_json(t.axis)}};
    nav_time += lat.navigation;
    PullPlan plan;
    std::string nav_problem;
    try {
      plan = plan_pull(t, config.drawer.standoff, config.drawer.pull_distance, cloud.floor_z(),
                       config.drawer.max_vertical_deg);
      const Vec2 pos = plan.body_pose.translation.head<2>();
      const double fp = config.nav.footprint_radius;
      if (pos.x() < fp || pos.y() < fp || pos.x() > scene.spec.room.x() - fp ||
          pos.y() > scene.spec.room.y() - fp) {
        nav_problem = "body pose outside the room";
      } else if (const auto hit = body_collision(scene, pos, fp, config.nav.camera_height)) {
        nav_problem = "body pose collides with " + *hit;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInvalidAxis) throw;
      nav_problem = e.what();
    }
    if (!nav_problem.empty()) {
      attempt["result"] = nav_problem;
      attempts.push_back(std::move(attempt));
      if (target_is_true) {
        fail(nav, nav_problem, nav_time);
        break;
      }
      continue;
    }
    if (target_is_true) pass(nav, nav_time);

    const std::uint64_t close_seed = derive_seed(derive_seed(seed, "close"), ti);
    DetectionFrame close;
    close.intrinsics = k;
    const Vec3 eye = t.handle_center + config.sim.close_view_distance * plan.axis;
    close.cam_pose = look_at(eye, t.handle_center);
    close.depth = render_depth(scene, k, close.cam_pose, config.noise, derive_seed(close_seed, "depth"));
    close.detections =
        oracle_detector(scene, k, close.cam_pose, config.noise, derive_seed(close_seed, "boxes"));
    const DrawerTarget refined =
        refine_target(t, close, config.drawer, derive_seed(close_seed, "refine"));
    manip_time += lat.drawer_detection + lat.object_detection;
    attempt["refined"] = refined.refined;
    attempt["refined_handle"] = vec_json(refined.handle_center);

    // The pull succeeds when the grasp point is on a real handle and the
    // pull direction follows that drawer's rail.
    const SimCabinet* opened_cabinet = nullptr;
    std::size_t opened = 0;
    double best = std::numeric_limits<double>::infinity();
    for (const SimCabinet& c : scene.cabinets) {
      for (std::size_t d = 0; d < c.drawers.size(); ++d) {
        const double dist = (c.drawers[d].handle_point - refined.handle_center).norm();
        if (dist < best) {
          best = dist;
          opened_cabinet = &c;
          opened = d;
        }
      }
    }
    const double axis_error =
        opened_cabinet ? angle_deg(refined.axis, opened_cabinet->axis) : 180.0;
    attempt["handle_error"] = best;
    attempt["axis_error_deg"] = axis_error;
    if (!(best <= config.sim.handle_tol) || !(axis_error <= config.sim.axis_tol_deg)) {
      attempt["result"] = "pull failed";
      attempts.push_back(std::move(attempt));
      if (target_is_true) {
        fail(manip, best <= config.sim.handle_tol ? "pull direction off the drawer axis"
                                                  : "grasp point off the handle",
             manip_time);
        break;
      }
      continue;
    }
    const std::string& content = opened_cabinet->drawers[opened].content;
    attempt["result"] = content.empty() ? "empty" : "found " + content;
    attempts.push_back(std::move(attempt));
    if (content == query) {
      if (nav.status != StageStatus::kPass) pass(nav, nav_time);
      pass(manip, manip_time);
      report.success = true;
      break;
    }
  }
  report.details["attempts"] = std::move(attempts);
  if (!report.success && manip.status == StageStatus::kNotReached &&
      nav.status != StageStatus::kFail) {
    if (nav.status == StageStatus::kNotReached) pass(nav, nav_time);
    fail(manip, "item not found in any opened drawer", manip_time);
  }
  return report;
}

}  // namespace mmplan::sim
