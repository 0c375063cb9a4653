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

#include "mmplan/config.hpp"

#include <cstdint>
#include <set>
#include <type_traits>

#include "mmplan/error.hpp"

namespace mmplan {
namespace {

using nlohmann::json;

template <typename T>
struct is_std_array : std::false_type {};
template <typename T, std::size_t N>
struct is_std_array<std::array<T, N>> : std::true_type {};

// Reads known keys of one JSON object onto existing defaults and rejects the
// rest.
class Block {
 public:
  Block(const json& doc, std::string path) : doc_(doc), path_(std::move(path)) {
    if (!doc_.is_object()) throw Error(ErrorCode::kInvalidConfig, "'" + path_ + "' must be an object");
  }

  template <typename T>
  void field(const char* key, T& out) {
    seen_.insert(key);
    if (!doc_.contains(key)) return;
    const json& v = doc_.at(key);
    bool ok;
    if constexpr (std::is_same_v<T, bool>) {
      ok = v.is_boolean();
    } else if constexpr (std::is_integral_v<T> && std::is_unsigned_v<T>) {
      ok = v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
    } else if constexpr (std::is_integral_v<T>) {
      ok = v.is_number_integer();
    } else if constexpr (std::is_floating_point_v<T>) {
      ok = v.is_number();
    } else if constexpr (std::is_same_v<T, std::string>) {
      ok = v.is_string();
    } else if constexpr (is_std_array<T>::value) {
      ok = v.is_array() && v.size() == std::tuple_size_v<T>;
    } else {
      ok = v.is_array();
    }
    if (ok) {
      try {
        out = v.get<T>();
      } catch (const json::exception&) {
        ok = false;
      }
    }
    if (!ok) throw Error(ErrorCode::kInvalidConfig, "invalid value for '" + name(key) + "'");
  }

  // Nested block, if present.
  std::optional<Block> child(const char* key) {
    seen_.insert(key);
    if (!doc_.contains(key)) return std::nullopt;
    return Block(doc_.at(key), name(key));
  }

  void finish() const {
    for (const auto& [key, value] : doc_.items()) {
      if (!seen_.contains(key)) throw Error(ErrorCode::kInvalidConfig, "unknown key '" + name(key) + "'");
    }
  }

 private:
  std::string name(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json& doc_;
  std::string path_;
  std::set<std::string> seen_;
};

void read(Block b, NavConfig& c) {
  b.field("radii", c.radii);
  b.field("angular_step", c.angular_step);
  b.field("footprint_radius", c.footprint_radius);
  b.field("camera_height", c.camera_height);
  b.field("standing_height", c.standing_height);
  b.field("lambda_item", c.lambda_item);
  b.field("los_clearance", c.los_clearance);
  b.field("los_target_exclusion", c.los_target_exclusion);
  b.finish();
}

void read(Block b, OptimizerWeights& c) {
  b.field("lambda_body", c.lambda_body);
  b.field("lambda_align", c.lambda_align);
  b.field("temperature", c.temperature);
  b.finish();
}

void read(Block b, GraspConfig& c) {
  b.field("on_object_tol", c.on_object_tol);
  b.field("sweep_count", c.sweep_count);
  b.field("top_k", c.top_k);
  b.field("isolate_padding", c.isolate_padding);
  b.finish();
}

void read(Block b, DrawerConfig& c) {
  if (auto m = b.child("match")) {
    m->field("kappa", c.match.kappa);
    m->field("ioa_min", c.match.ioa_min);
    m->field("sentinel", c.match.sentinel);
    m->finish();
  }
  if (auto r = b.child("ransac")) {
    r->field("threshold", c.ransac.threshold);
    r->field("iterations", c.ransac.iterations);
    r->field("min_inlier_fraction", c.ransac.min_inlier_fraction);
    r->finish();
  }
  b.field("cluster_radius", c.cluster_radius);
  b.field("gate_radius", c.gate_radius);
  b.field("standoff", c.standoff);
  b.field("pull_distance", c.pull_distance);
  b.field("max_vertical_deg", c.max_vertical_deg);
  b.finish();
}

void read(Block b, sim::SimConfig& c) {
  if (auto k = b.child("camera")) {
    k->field("fx", c.camera.fx);
    k->field("fy", c.camera.fy);
    k->field("cx", c.camera.cx);
    k->field("cy", c.camera.cy);
    k->field("width", c.camera.width);
    k->field("height", c.camera.height);
    k->finish();
  }
  if (auto l = b.child("latency")) {
    l->field("localization", c.latency.localization);
    l->field("grasp_estimation", c.latency.grasp_estimation);
    l->field("navigation", c.latency.navigation);
    l->field("joint_optimization", c.latency.joint_optimization);
    l->field("drawer_detection", c.latency.drawer_detection);
    l->field("object_detection", c.latency.object_detection);
    l->finish();
  }
  b.field("min_similarity", c.min_similarity);
  b.field("gripper_max_width", c.gripper_max_width);
  b.field("proposals_per_tier", c.proposals_per_tier);
  b.field("tier_noise_scale", c.tier_noise_scale);
  b.field("grasp_center_tol", c.grasp_center_tol);
  b.field("axis_tol_deg", c.axis_tol_deg);
  b.field("handle_tol", c.handle_tol);
  b.field("viewpoint_count", c.viewpoint_count);
  b.field("viewpoint_span_deg", c.viewpoint_span_deg);
  b.field("viewpoint_radius", c.viewpoint_radius);
  b.field("viewpoint_height", c.viewpoint_height);
  b.field("views_per_cabinet", c.views_per_cabinet);
  b.field("close_view_distance", c.close_view_distance);
  b.finish();
}

void read(Block b, sim::NoiseModel& c) {
  b.field("depth_sigma", c.depth_sigma);
  b.field("depth_dropout", c.depth_dropout);
  b.field("detection_dropout", c.detection_dropout);
  b.field("bbox_jitter_sigma", c.bbox_jitter_sigma);
  b.field("confidence_lo", c.confidence_lo);
  b.field("confidence_hi", c.confidence_hi);
  b.field("grasp_sigma", c.grasp_sigma);
  b.finish();
}

}  // namespace

RunConfig run_config_from_json(const json& doc) {
  RunConfig rc;
  Block top(doc, "");
  top.field("seed", rc.seed);
  top.field("output_dir", rc.output_dir);
  sim::PipelineConfig& p = rc.pipeline;
  if (auto b = top.child("nav")) read(*b, p.nav);
  if (auto b = top.child("optimizer")) read(*b, p.optimizer);
  if (auto b = top.child("grasp")) read(*b, p.grasp);
  if (auto b = top.child("drawer")) read(*b, p.drawer);
  if (auto b = top.child("sim")) read(*b, p.sim);
  if (auto b = top.child("noise")) read(*b, p.noise);
  top.finish();
  p.validate();
  return rc;
}

json to_json(const NavConfig& c) {
  return {{"radii", c.radii},
          {"angular_step", c.angular_step},
          {"footprint_radius", c.footprint_radius},
          {"camera_height", c.camera_height},
          {"standing_height", c.standing_height},
          {"lambda_item", c.lambda_item},
          {"los_clearance", c.los_clearance},
          {"los_target_exclusion", c.los_target_exclusion}};
}

json to_json(const OptimizerWeights& c) {
  return {{"lambda_body", c.lambda_body},
          {"lambda_align", c.lambda_align},
          {"temperature", c.temperature}};
}

json to_json(const GraspConfig& c) {
  return {{"on_object_tol", c.on_object_tol},
          {"sweep_count", c.sweep_count},
          {"top_k", c.top_k},
          {"isolate_padding", c.isolate_padding}};
}

json to_json(const DrawerConfig& c) {
  return {{"match", {{"kappa", c.match.kappa}, {"ioa_min", c.match.ioa_min},
                     {"sentinel", c.match.sentinel}}},
          {"ransac", {{"threshold", c.ransac.threshold}, {"iterations", c.ransac.iterations},
                      {"min_inlier_fraction", c.ransac.min_inlier_fraction}}},
          {"cluster_radius", c.cluster_radius},
          {"gate_radius", c.gate_radius},
          {"standoff", c.standoff},
          {"pull_distance", c.pull_distance},
          {"max_vertical_deg", c.max_vertical_deg}};
}

json to_json(const sim::SimConfig& c) {
  const sim::LatencyModel& l = c.latency;
  return {{"camera", {{"fx", c.camera.fx}, {"fy", c.camera.fy}, {"cx", c.camera.cx},
                      {"cy", c.camera.cy}, {"width", c.camera.width},
                      {"height", c.camera.height}}},
          {"latency", {{"localization", l.localization},
                       {"grasp_estimation", l.grasp_estimation},
                       {"navigation", l.navigation},
                       {"joint_optimization", l.joint_optimization},
                       {"drawer_detection", l.drawer_detection},
                       {"object_detection", l.object_detection}}},
          {"min_similarity", c.min_similarity},
          {"gripper_max_width", c.gripper_max_width},
          {"proposals_per_tier", c.proposals_per_tier},
          {"tier_noise_scale", c.tier_noise_scale},
          {"grasp_center_tol", c.grasp_center_tol},
          {"axis_tol_deg", c.axis_tol_deg},
          {"handle_tol", c.handle_tol},
          {"viewpoint_count", c.viewpoint_count},
          {"viewpoint_span_deg", c.viewpoint_span_deg},
          {"viewpoint_radius", c.viewpoint_radius},
          {"viewpoint_height", c.viewpoint_height},
          {"views_per_cabinet", c.views_per_cabinet},
          {"close_view_distance", c.close_view_distance}};
}

json to_json(const sim::NoiseModel& c) {
  return {{"depth_sigma", c.depth_sigma},
          {"depth_dropout", c.depth_dropout},
          {"detection_dropout", c.detection_dropout},
          {"bbox_jitter_sigma", c.bbox_jitter_sigma},
          {"confidence_lo", c.confidence_lo},
          {"confidence_hi", c.confidence_hi},
          {"grasp_sigma", c.grasp_sigma}};
}

json to_json(const RunConfig& c) {
  return {{"seed", c.seed},
          {"output_dir", c.output_dir},
          {"nav", to_json(c.pipeline.nav)},
          {"optimizer", to_json(c.pipeline.optimizer)},
          {"grasp", to_json(c.pipeline.grasp)},
          {"drawer", to_json(c.pipeline.drawer)},
          {"sim", to_json(c.pipeline.sim)},
          {"noise", to_json(c.pipeline.noise)}};
}

}  // namespace mmplan
