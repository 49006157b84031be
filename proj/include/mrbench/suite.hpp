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

// Suite manifests (".suite"):
//
//   group static
//   scene office.scene
//   scene maze.scene
//   group dynamic
//   scene crowd.scene
//
// Scene paths are relative to the manifest.

#pragma once

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "mrbench/dwa.hpp"
#include "mrbench/harness.hpp"
#include "mrbench/planner_config_io.hpp"
#include "mrbench/report.hpp"
#include "mrbench/scenario_io.hpp"
#include "mrbench/svg.hpp"
#include "mrbench/teb.hpp"

namespace mrbench {

inline const std::vector<std::string>& known_groups() {
  static const std::vector<std::string> g = {"static", "partially_unknown", "dynamic"};
  return g;
}

struct SuiteEntry {
  std::string group;
  std::string scene_path;  // resolved
};

struct SuiteManifest {
  std::vector<SuiteEntry> entries;
};

inline SuiteManifest parse_suite(std::istream& is, const std::string& source,
                                 const std::filesystem::path& base_dir) {
  SuiteManifest m;
  std::string group;
  for (const text::Line& l : text::tokenize(is)) {
    text::expect_arity(l, 2, source);
    const std::string& key = l.tokens[0];
    if (key == "group") {
      const auto& g = known_groups();
      if (std::find(g.begin(), g.end(), l.tokens[1]) == g.end()) {
        throw ParseError(source, l.number,
                         "group must be one of static, partially_unknown, dynamic");
      }
      group = l.tokens[1];
    } else if (key == "scene") {
      if (group.empty()) throw ParseError(source, l.number, "'scene' before any 'group'");
      m.entries.push_back({group, (base_dir / l.tokens[1]).lexically_normal().string()});
    } else {
      throw ParseError(source, l.number, "unknown directive '" + key + "'");
    }
  }
  return m;
}

inline SuiteManifest load_suite(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open suite manifest: " + path);
  return parse_suite(in, path, std::filesystem::path(path).parent_path());
}

inline std::unique_ptr<LocalPlanner> make_planner(const std::string& name,
                                                  const PlannerSettings& s, double radius) {
  if (name == "dwa") return std::make_unique<DwaPlanner>(s.dwa);
  if (name == "teb") return std::make_unique<TebPlanner>(s.teb, radius);
  throw InputError("unknown planner '" + name + "' (expected dwa or teb)");
}

struct SuiteOptions {
  std::vector<std::string> planners = {"dwa", "teb"};
  PlannerSettings settings;
  TrialConfig trial;
  std::filesystem::path out_dir = "out";
  unsigned jobs = 1;
  bool svg = false;
};

struct TrialJob {
  std::string group;
  std::size_t scene = 0;
  std::size_t pair = 0;
  std::string planner;
};

struct SuiteOutcome {
  std::vector<TrialSummary> trials;
  std::vector<std::string> crashes;  // "<trial>: <message>"
  std::vector<std::string> log_files;
  std::vector<std::string> table_files;
};

inline std::string trial_stem(const std::string& scene, std::size_t pair, const std::string& planner) {
  return scene + "_pair" + std::to_string(pair + 1) + "_" + planner;
}

/// Path of a trial log below a suite output directory.
inline std::filesystem::path trial_log_path(const std::filesystem::path& out, const std::string& group,
                                            const std::string& scene, std::size_t pair,
                                            const std::string& planner) {
  return out / "logs" / group / (trial_stem(scene, pair, planner) + ".csv");
}

/// Runs every (scene, pair, planner) trial of the manifest on `jobs` worker
/// threads. Writes one log per trial under <out>/logs/<group>/ and
/// the group tables under <out>/tables/. Failures are data; exceptions
/// escaping a trial are collected as crashes.
inline SuiteOutcome run_suite(const SuiteManifest& manifest, const SuiteOptions& opt) {
  std::vector<Scenario> scenes;
  for (const SuiteEntry& e : manifest.entries) scenes.push_back(load_scenario(e.scene_path, opt.trial.limits.radius));
  std::vector<std::unique_ptr<LocalPlanner>> planners;
  for (const std::string& p : opt.planners) planners.push_back(make_planner(p, opt.settings, opt.trial.limits.radius));

  std::vector<TrialJob> jobs;
  for (std::size_t s = 0; s < scenes.size(); ++s) {
    for (std::size_t k = 0; k < scenes[s].pairs.size(); ++k) {
      for (const std::string& p : opt.planners) jobs.push_back({manifest.entries[s].group, s, k, p});
    }
  }
  std::filesystem::create_directories(opt.out_dir);

  struct Slot {
    bool ok = false;
    std::string log_text;
    std::string log_path;
    std::string error;
  };
  std::vector<Slot> slots(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex fs_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      const TrialJob& job = jobs[j];
      const Scenario& sc = scenes[job.scene];
      Slot& slot = slots[j];
      try {
        const auto pit = std::find(opt.planners.begin(), opt.planners.end(), job.planner);
        const LocalPlanner& planner = *planners[static_cast<std::size_t>(pit - opt.planners.begin())];
        TrialResult r = run_trial(sc, planner, job.pair, opt.trial);
        r.metadata.insert(r.metadata.begin(), {"group", job.group});
        const auto path = trial_log_path(opt.out_dir, job.group, sc.name, job.pair, job.planner);
        slot.log_text = navlog_to_string(r.log, r.metadata);
        slot.log_path = path.string();
        {
          std::lock_guard<std::mutex> lock(fs_mutex);
          std::filesystem::create_directories(path.parent_path());
          if (opt.svg) std::filesystem::create_directories(opt.out_dir / "svg" / job.group);
        }
        text::write_file(path, slot.log_text);
        if (opt.svg) {
          emit_trajectory_svg(r, (opt.out_dir / "svg" / job.group /
                                  (trial_stem(sc.name, job.pair, job.planner) + ".svg"))
                                     .string());
        }
        slot.ok = true;
      } catch (const std::exception& e) {
        slot.error = trial_stem(sc.name, job.pair, job.planner) + ": " + e.what();
      }
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  SuiteOutcome out;
  for (const Slot& s : slots) {
    if (!s.ok) {
      out.crashes.push_back(s.error);
      continue;
    }
    // Tables are built from the rendered logs so that re-aggregating the
    // files reproduces them exactly.
    std::istringstream in(s.log_text);
    out.trials.push_back(summarize(parse_navlog(in, s.log_path), opt.trial.metrics));
    out.log_files.push_back(s.log_path);
  }
  out.table_files = write_tables(opt.out_dir / "tables", out.trials);
  return out;
}

}  // namespace mrbench
