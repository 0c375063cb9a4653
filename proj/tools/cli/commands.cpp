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

#include "commands.hpp"

#include <algorithm>
#include <fstream>

#include "mmplan/drawer/io.hpp"
#include "mmplan/error.hpp"
#include "mmplan/grasp/io.hpp"
#include "mmplan/rng.hpp"
#include "mmplan/scene/io.hpp"
#include "mmplan/sim/batch.hpp"

namespace mmplan::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

CommandResult failure(int code, const std::string& message, json report) {
  report["status"] = "error";
  report["error"] = message;
  return {code, std::move(report), message};
}

void require_file(const fs::path& path, const char* flag) {
  if (path.empty()) throw Error(ErrorCode::kInvalidArgument, std::string(flag) + " is required");
  if (!fs::exists(path)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(flag) + " file not found: " + path.string());
  }
}

json body_json(const BodyCandidate& b) {
  return {{"position", {b.position.x(), b.position.y()}},
          {"yaw", b.yaw},
          {"s_body", b.s_body},
          {"d_obstacles", b.d_obstacles},
          {"d_item", b.d_item},
          {"valid", b.valid},
          {"reason", std::string(to_string(b.reason))}};
}

}  // namespace

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw Error(ErrorCode::kInvalidConfig, "override '" + assignment + "' is not key=value");
  }
  const std::string path = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot - start);
    if (key.empty()) throw Error(ErrorCode::kInvalidConfig, "override key '" + path + "' is malformed");
    if (!node->is_object()) {
      throw Error(ErrorCode::kInvalidConfig, "override '" + path + "' descends into a non-object");
    }
    if (dot == std::string::npos) {
      (*node)[key] = std::move(value);
      return;
    }
    node = &(*node)[key];
    if (node->is_null()) *node = json::object();
    start = dot + 1;
  }
}

RunConfig resolve_config(const Options& opts) {
  json doc = json::object();
  if (!opts.config.empty()) {
    require_file(opts.config, "--config");
    doc = read_json_file(opts.config);
  }
  for (const std::string& o : opts.overrides) apply_override(doc, o);
  RunConfig rc = run_config_from_json(doc);
  if (opts.seed) rc.seed = *opts.seed;
  if (!opts.out.empty()) rc.output_dir = opts.out.string();
  return rc;
}

std::vector<double> read_query_embedding(const fs::path& path) {
  require_file(path, "--query");
  const json doc = read_json_file(path);
  const json& values = doc.is_object() && doc.contains("embedding") ? doc.at("embedding") : doc;
  if (!values.is_array() || values.empty() ||
      std::any_of(values.begin(), values.end(), [](const json& v) { return !v.is_number(); })) {
    throw Error(ErrorCode::kParse, path.string() + ": expected an array of numbers");
  }
  return values.get<std::vector<double>>();
}

CommandResult cmd_query(const Options& opts) {
  json report = {{"command", "query"}};
  const RunConfig rc = resolve_config(opts);
  report["config"] = to_json(rc);
  require_file(opts.scene, "--scene");
  require_file(opts.instances, "--instances");
  const PointCloudScene scene = load_scene(opts.scene, opts.instances);
  const auto query = read_query_embedding(opts.query);
  std::vector<QueryResult> ranked;
  try {
    ranked = query_instance(scene, query);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kUnsupportedQuery) return failure(kExitNoEmbeddings, e.what(), report);
    throw;
  }
  json results = json::array();
  for (const QueryResult& r : ranked) {
    results.push_back({{"instance_id", r.instance_id},
                       {"label", scene.instance(r.instance_id).label},
                       {"similarity", r.similarity},
                       {"centroid", vec_json(r.centroid)}});
  }
  report["results"] = std::move(results);
  report["status"] = "ok";
  return {kExitOk, std::move(report), ""};
}

CommandResult cmd_plan_grasp(const Options& opts) {
  json report = {{"command", "plan-grasp"}};
  const RunConfig rc = resolve_config(opts);
  const sim::PipelineConfig& cfg = rc.pipeline;
  report["config"] = to_json(rc);
  require_file(opts.scene, "--scene");
  require_file(opts.instances, "--instances");
  for (const fs::path& g : opts.grasps) require_file(g, "--grasps");
  const PointCloudScene scene = load_scene(opts.scene, opts.instances);
  const auto query = read_query_embedding(opts.query);
  std::vector<GraspBatch> batches;
  for (const fs::path& g : opts.grasps) batches.push_back(read_grasp_batch(g));

  std::vector<QueryResult> ranked;
  try {
    ranked = query_instance(scene, query);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kUnsupportedQuery) return failure(kExitNoEmbeddings, e.what(), report);
    throw;
  }
  if (ranked.empty() || ranked.front().similarity < cfg.sim.min_similarity) {
    return failure(kExitLocalization,
                   "no instance reaches similarity " + std::to_string(cfg.sim.min_similarity),
                   report);
  }
  const QueryResult& top = ranked.front();
  report["localization"] = {{"instance_id", top.instance_id},
                            {"label", scene.instance(top.instance_id).label},
                            {"similarity", top.similarity},
                            {"centroid", vec_json(top.centroid)}};

  for (GraspBatch& b : batches) {
    b.candidates = top_k(b.candidates, static_cast<std::size_t>(cfg.grasp.top_k));
  }
  const auto merged = merge_rotation_sweeps(batches, top.centroid);
  const auto object = isolate_object(scene, top.instance_id, cfg.grasp.isolate_padding);
  const auto kept = filter_grasps(merged, object.object_points, cfg.grasp.on_object_tol);

  // filter_grasps preserves order, so kept grasps map back to merged indices.
  std::vector<std::size_t> kept_index;
  for (std::size_t i = 0, k = 0; i < merged.size() && k < kept.size(); ++i) {
    if (merged[i].pose.translation == kept[k].pose.translation &&
        merged[i].score == kept[k].score) {
      kept_index.push_back(i);
      ++k;
    }
  }
  json grasps = json::array();
  for (std::size_t i = 0, k = 0; i < merged.size(); ++i) {
    json g = grasp_to_json(merged[i]);
    g["index"] = i;
    g["source_rotation"] = merged[i].source_rotation;
    const bool is_kept = k < kept_index.size() && kept_index[k] == i;
    if (is_kept) ++k;
    g["kept"] = is_kept;
    grasps.push_back(std::move(g));
  }
  report["grasps"] = std::move(grasps);
  report["kept_grasps"] = kept_index;
  if (kept.empty()) return failure(kExitGraspFilter, "no grasp candidate survived filtering", report);

  const auto sampled = sample_positions(top.centroid, cfg.nav, scene.floor_z());
  const auto checked = validate_candidates(sampled, scene, top.instance_id, cfg.nav);
  std::vector<BodyCandidate> valid;
  std::vector<std::size_t> valid_index;
  json bodies = json::array();
  for (std::size_t i = 0; i < checked.size(); ++i) {
    bodies.push_back(body_json(checked[i]));
    if (checked[i].valid) {
      valid.push_back(checked[i]);
      valid_index.push_back(i);
    }
  }
  report["bodies"] = std::move(bodies);
  if (valid.empty()) return failure(kExitNavigation, "no valid body position", report);

  const JointSelection sel = select_best(kept, valid, top.centroid, cfg.optimizer);
  report["selection"] = {{"grasp_index", kept_index[sel.grasp_index]},
                         {"body_index", valid_index[sel.body_index]},
                         {"s", sel.s},
                         {"s_grasp", sel.s_grasp},
                         {"s_body", sel.s_body},
                         {"s_align", sel.s_align},
                         {"grasp", grasp_to_json(kept[sel.grasp_index])},
                         {"body", body_json(valid[sel.body_index])}};
  report["status"] = "ok";
  return {kExitOk, std::move(report), ""};
}

CommandResult cmd_match_drawers(const Options& opts) {
  json report = {{"command", "match-drawers"}};
  const RunConfig rc = resolve_config(opts);
  report["config"] = to_json(rc);
  std::vector<DetectionFrame> frames;
  for (const fs::path& f : opts.frames) {
    require_file(f, "--frames");
    frames.push_back(read_frame(f));
  }
  const std::uint64_t seed = derive_seed(rc.seed, "match-drawers");
  json views = json::array();
  for (std::size_t i = 0; i < frames.size(); ++i) {
    views.push_back({{"frame", i}, {"detections", frames[i].detections.size()}});
  }
  const auto targets = detect_drawers(frames, rc.pipeline.drawer, seed);
  json out = json::array();
  for (const DrawerTarget& t : targets) out.push_back(target_to_json(t));
  report["frames"] = std::move(views);
  report["targets"] = std::move(out);
  report["status"] = "ok";
  return {kExitOk, std::move(report), ""};
}

CommandResult cmd_simulate(const Options& opts) {
  json report = {{"command", "simulate"}};
  const RunConfig rc = resolve_config(opts);
  std::optional<sim::SceneSpec> spec;
  if (!opts.scene.empty()) {
    require_file(opts.scene, "--scene");
    spec = sim::scene_spec_from_json(read_json_file(opts.scene));
  }
  sim::Task task;
  if (opts.task == "grasp") {
    task = sim::Task::kGrasp;
  } else if (opts.task == "search") {
    task = sim::Task::kSearch;
  } else if (opts.task.empty()) {
    task = spec && !spec->search_item.empty() ? sim::Task::kSearch : sim::Task::kGrasp;
  } else {
    throw Error(ErrorCode::kInvalidArgument, "--task must be grasp or search");
  }
  if (!spec) spec = task == sim::Task::kGrasp ? sim::default_grasp_spec() : sim::default_search_spec();

  const sim::BatchResult result = sim::run_batch(task, *spec, rc.pipeline, opts.episodes, rc.seed);
  report["task"] = std::string(sim::to_string(task));
  report["seed"] = rc.seed;
  report["episodes"] = opts.episodes;
  report["config"] = to_json(rc);
  report["spec"] = sim::scene_spec_to_json(*spec);
  report["summary"] = sim::to_json(result.summary);
  report["status"] = "ok";

  if (!opts.out.empty()) {
    fs::create_directories(opts.out);
    std::ofstream episodes(opts.out / "episodes.ndjson", std::ios::binary);
    for (const sim::EpisodeReport& r : result.reports) episodes << sim::to_json(r).dump() << '\n';
    std::ofstream summary(opts.out / "summary.json", std::ios::binary);
    summary << report.dump(2) << '\n';
    if (!episodes || !summary) {
      throw Error(ErrorCode::kInvalidArgument, "cannot write to " + opts.out.string());
    }
  }
  return {kExitOk, std::move(report), ""};
}

}  // namespace mmplan::cli
