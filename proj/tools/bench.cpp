// Copyright 2026 The mrbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// bench: command-line front end for trials, suites and reports.

#include <exception>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "mrbench/mrbench.hpp"

namespace fs = std::filesystem;
using namespace mrbench;

namespace {

struct CommonOptions {
  std::uint64_t seed = 0;
  std::string cost_mode = "wallclock";
  double control_period = 0.2;
  std::vector<std::string> configs;
  bool svg = false;
};

void add_trial_options(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--seed", o.seed, "Trial seed");
  cmd->add_option("--cost-mode", o.cost_mode, "Compute-cost measure")
      ->check(CLI::IsMember({"wallclock", "iterations"}));
  cmd->add_option("--control-period", o.control_period, "Local planning period [s]")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--config", o.configs, "Planner .cfg file (repeatable)");
  cmd->add_flag("--svg", o.svg, "Write trajectory SVGs");
}

std::vector<std::string> split_planners(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  if (out.empty()) throw InputError("--planner: empty planner list");
  return out;
}

TrialConfig trial_config(const CommonOptions& o) {
  TrialConfig c;
  c.seed = o.seed;
  c.cost_mode = parse_cost_mode(o.cost_mode);
  c.control_period = o.control_period;
  // Keep the physics step dividing the period.
  const int n = std::max(1, static_cast<int>(std::lround(o.control_period / 0.05)));
  c.physics_dt = o.control_period / n;
  c.record_trace = false;
  validate(c);
  return c;
}

PlannerSettings planner_settings(const CommonOptions& o) {
  PlannerSettings s;
  for (const std::string& p : o.configs) load_planner_config(p, s);
  return s;
}

void print_tables(const std::vector<std::string>& files) {
  for (const std::string& f : files) {
    if (fs::path(f).extension() == ".md") std::cout << text::read_file(f) << '\n';
  }
}

int cmd_run(const std::string& suite, const std::string& planners, const std::string& out,
            unsigned jobs, const CommonOptions& o) {
  SuiteOptions opt;
  opt.planners = split_planners(planners);
  opt.settings = planner_settings(o);
  opt.trial = trial_config(o);
  opt.out_dir = out;
  opt.jobs = jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : jobs;
  opt.svg = o.svg;
  for (const std::string& p : opt.planners) make_planner(p, opt.settings, opt.trial.limits.radius);
  const SuiteOutcome r = run_suite(load_suite(suite), opt);
  print_tables(r.table_files);
  std::cout << r.log_files.size() << " trial logs written to " << (fs::path(out) / "logs").string() << '\n';
  for (const std::string& c : r.crashes) std::cerr << "crash: " << c << '\n';
  return r.crashes.empty() ? 0 : 1;
}

int cmd_trial(const std::string& scene, int pair, const std::string& planner_name,
              const std::string& out, const CommonOptions& o) {
  const TrialConfig cfg = trial_config(o);
  const PlannerSettings settings = planner_settings(o);
  const Scenario s = load_scenario(scene, cfg.limits.radius);
  if (pair < 1 || static_cast<std::size_t>(pair) > s.pairs.size()) {
    throw InputError("--pair must be in 1.." + std::to_string(s.pairs.size()) + " for " + scene);
  }
  const auto planner = make_planner(planner_name, settings, cfg.limits.radius);
  TrialResult r = run_trial(s, *planner, static_cast<std::size_t>(pair - 1), cfg);
  const std::string group = s.partially_unknown() ? "partially_unknown" : s.dynamic() ? "dynamic" : "static";
  r.metadata.insert(r.metadata.begin(), {"group", group});
  const fs::path log = trial_log_path(out, group, s.name, r.pair_index, r.planner);
  fs::create_directories(log.parent_path());
  save_navlog(log.string(), r.log, r.metadata);
  const std::string stem = trial_stem(s.name, r.pair_index, r.planner);
  if (o.svg) {
    fs::create_directories(fs::path(out) / "svg" / group);
    emit_trajectory_svg(r, (fs::path(out) / "svg" / group / (stem + ".svg")).string());
  }
  const MetricsReport& m = r.report;
  std::cout << stem << ": " << to_string(r.log.outcome) << " (" << log.string() << ")\n";
  for (const MetricColumn& c : metric_columns(o.cost_mode)) {
    std::cout << "  " << c.label << " = " << format_number(m.*(c.field)) << '\n';
  }
  return 0;
}

int cmd_validate(const std::string& scene) {
  const Scenario s = load_scenario(scene);
  validate_scenario(s);
  std::cout << scene << ": ok (" << s.pairs.size() << " pairs, " << s.agents.size() << " agents, "
            << s.masks.size() << " masks)\n";
  return 0;
}

int cmd_report(const std::string& in, const std::string& out) {
  const std::vector<TrialSummary> trials = collect_logs(fs::path(in) / "logs");
  if (trials.empty()) throw InputError("no trial logs under " + (fs::path(in) / "logs").string());
  print_tables(write_tables(out.empty() ? fs::path(in) / "tables" : fs::path(out), trials));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mrbench: local planner benchmark"};
  app.require_subcommand(1);

  CommonOptions run_opt;
  std::string suite, planners = "dwa,teb", run_out = "out";
  unsigned jobs = 0;
  CLI::App* run = app.add_subcommand("run", "Run every trial of a suite manifest");
  run->add_option("--suite", suite, "Suite manifest")->required()->check(CLI::ExistingFile);
  run->add_option("--planner", planners, "Comma-separated planners (dwa, teb)");
  run->add_option("--out", run_out, "Output directory");
  run->add_option("--jobs", jobs, "Worker threads (0 = hardware concurrency)");
  add_trial_options(run, run_opt);

  CommonOptions trial_opt;
  std::string scene, planner = "teb", trial_out = "out";
  int pair = 1;
  CLI::App* trial = app.add_subcommand("trial", "Run one start/goal pair of one scene");
  trial->add_option("--scene", scene, "Scene file")->required()->check(CLI::ExistingFile);
  trial->add_option("--pair", pair, "Pair number, 1-based");
  trial->add_option("--planner", planner, "dwa or teb");
  trial->add_option("--out", trial_out, "Output directory");
  add_trial_options(trial, trial_opt);

  std::string validate_scene;
  CLI::App* val = app.add_subcommand("validate", "Check a scene file");
  val->add_option("--scene", validate_scene, "Scene file")->required()->check(CLI::ExistingFile);

  std::string report_in, report_out;
  CLI::App* rep = app.add_subcommand("report", "Rebuild group tables from trial logs");
  rep->add_option("--in", report_in, "Suite output directory")->required()->check(CLI::ExistingDirectory);
  rep->add_option("--out", report_out, "Table directory (default <in>/tables)");

  std::string gen_out = "scenarios";
  std::uint64_t gen_seed = 1;
  CLI::App* gen = app.add_subcommand("generate", "Write the standard suite");
  gen->add_option("--out", gen_out, "Output directory");
  gen->add_option("--seed", gen_seed, "World seed");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(suite, planners, run_out, jobs, run_opt);
    if (*trial) return cmd_trial(scene, pair, planner, trial_out, trial_opt);
    if (*val) return cmd_validate(validate_scene);
    if (*rep) return cmd_report(report_in, report_out);
    if (*gen) {
      std::cout << write_standard_suite(gen_out, gen_seed) << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
