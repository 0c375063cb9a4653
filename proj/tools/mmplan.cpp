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

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "mmplan/error.hpp"

namespace {

using mmplan::cli::CommandResult;
using mmplan::cli::Options;

constexpr const char* kExitCodes =
    "Exit codes:\n"
    "  0  success\n"
    "  1  invalid input, config or scene spec\n"
    "  2  query needs embeddings but the scene has none\n"
    "  3  localization failed (no instance matches the query)\n"
    "  4  no grasp candidate survived filtering\n"
    "  5  no valid body position\n";

int emit(const CommandResult& r, const Options& opts, bool report_to_file) {
  if (!r.message.empty()) std::cerr << "mmplan: " << r.message << '\n';
  const std::string text = r.report.dump(2) + "\n";
  if (report_to_file && !opts.out.empty()) {
    std::ofstream out(opts.out, std::ios::binary);
    out << text;
    if (!out) {
      std::cerr << "mmplan: cannot write " << opts.out << '\n';
      return mmplan::cli::kExitInput;
    }
  } else {
    std::cout << text;
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mobile manipulation planning: localization, grasp and body placement, drawer search"};
  app.footer(kExitCodes);
  app.require_subcommand(1);
  Options opts;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opts.config, "JSON config with nav/optimizer/grasp/drawer/sim/noise blocks");
    cmd->add_option("--set", opts.overrides, "Override a config value, e.g. nav.lambda_item=0.3");
    cmd->add_option("--seed", opts.seed, "Global seed; subsystem seeds are derived from it");
    cmd->add_option("--out", opts.out, "Report file (simulate: output directory)");
  };

  CLI::App* query = app.add_subcommand("query", "Rank scene instances by similarity to a query embedding");
  query->add_option("--scene", opts.scene, "ASCII PLY point cloud")->required();
  query->add_option("--instances", opts.instances, "Instance masks JSON")->required();
  query->add_option("--query", opts.query, "Query embedding JSON")->required();
  add_common(query);

  CLI::App* plan = app.add_subcommand("plan-grasp", "Select a grasp and body pose for the queried object");
  plan->add_option("--scene", opts.scene, "ASCII PLY point cloud")->required();
  plan->add_option("--instances", opts.instances, "Instance masks JSON")->required();
  plan->add_option("--query", opts.query, "Query embedding JSON")->required();
  plan->add_option("--grasps", opts.grasps, "Grasp batch JSON, one per sweep rotation")->required();
  add_common(plan);

  CLI::App* drawers = app.add_subcommand("match-drawers", "Fuse drawer targets from detection frames");
  drawers->add_option("--frames", opts.frames, "Detection frame JSON files");
  add_common(drawers);

  CLI::App* simulate = app.add_subcommand("simulate", "Run seeded grasp or search episodes");
  simulate->add_option("--scene", opts.scene, "Scene spec JSON (defaults to the built-in scene)");
  simulate->add_option("--task", opts.task, "grasp or search")->check(CLI::IsMember({"grasp", "search"}));
  simulate->add_option("--episodes", opts.episodes, "Episode count")->check(CLI::PositiveNumber);
  add_common(simulate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : mmplan::cli::kExitInput;
  }
  CLI::App* chosen = app.get_subcommands().front();
  try {
    if (chosen == query) return emit(mmplan::cli::cmd_query(opts), opts, true);
    if (chosen == plan) return emit(mmplan::cli::cmd_plan_grasp(opts), opts, true);
    if (chosen == drawers) return emit(mmplan::cli::cmd_match_drawers(opts), opts, true);
    return emit(mmplan::cli::cmd_simulate(opts), opts, false);
  } catch (const mmplan::Error& e) {
    CommandResult r;
    r.exit_code = e.code() == mmplan::ErrorCode::kUnsupportedQuery ? mmplan::cli::kExitNoEmbeddings
                                                                    : mmplan::cli::kExitInput;
    r.message = e.what();
    r.report = {{"command", chosen->get_name()},
                {"status", "error"},
                {"error", e.what()},
                {"error_code", std::string(mmplan::to_string(e.code()))}};
    return emit(r, opts, chosen != simulate);
  } catch (const std::exception& e) {
    std::cerr << "mmplan: " << e.what() << '\n';
    return mmplan::cli::kExitInput;
  }
}
