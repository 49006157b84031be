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

// Planner config files (".cfg"):
//
//   planner teb
//   n_poses 30
//   w_obstacle 50
//
// The `planner` line names the config being set; the remaining keys are the
// field names of that planner's config. Unknown keys are rejected.

#pragma once

#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "mrbench/dwa.hpp"
#include "mrbench/teb.hpp"
#include "mrbench/text_io.hpp"

namespace mrbench {

struct PlannerSettings {
  DwaConfig dwa;
  TebConfig teb;
};

namespace detail {

template <typename Config>
using FieldTable = std::map<std::string, std::function<double&(Config&)>, std::less<>>;

inline const FieldTable<DwaConfig>& dwa_fields() {
  static const FieldTable<DwaConfig> t = {
      {"sim_horizon", [](DwaConfig& c) -> double& { return c.sim_horizon; }},
      {"sim_dt", [](DwaConfig& c) -> double& { return c.sim_dt; }},
      {"w_heading", [](DwaConfig& c) -> double& { return c.w_heading; }},
      {"w_clearance", [](DwaConfig& c) -> double& { return c.w_clearance; }},
      {"w_velocity", [](DwaConfig& c) -> double& { return c.w_velocity; }},
      {"lookahead", [](DwaConfig& c) -> double& { return c.lookahead; }},
      {"clearance_cap", [](DwaConfig& c) -> double& { return c.clearance_cap; }},
  };
  return t;
}

inline const FieldTable<TebConfig>& teb_fields() {
  static const FieldTable<TebConfig> t = {
      {"dt_init", [](TebConfig& c) -> double& { return c.dt_init; }},
      {"dt_ref", [](TebConfig& c) -> double& { return c.dt_ref; }},
      {"w_time", [](TebConfig& c) -> double& { return c.w_time; }},
      {"w_obstacle", [](TebConfig& c) -> double& { return c.w_obstacle; }},
      {"w_velocity", [](TebConfig& c) -> double& { return c.w_velocity; }},
      {"w_acceleration", [](TebConfig& c) -> double& { return c.w_acceleration; }},
      {"w_nonholonomic", [](TebConfig& c) -> double& { return c.w_nonholonomic; }},
      {"w_goal", [](TebConfig& c) -> double& { return c.w_goal; }},
      {"d_min", [](TebConfig& c) -> double& { return c.d_min; }},
      {"dt_floor", [](TebConfig& c) -> double& { return c.dt_floor; }},
      {"rel_tol", [](TebConfig& c) -> double& { return c.rel_tol; }},
  };
  return t;
}

}  // namespace detail

/// Applies one config file on top of `settings`.
inline void parse_planner_config(std::istream& is, const std::string& source,
                                 PlannerSettings& settings) {
  std::string planner;
  for (const text::Line& l : text::tokenize(is)) {
    const std::string& key = l.tokens[0];
    text::expect_arity(l, 2, source);
    const std::string& val = l.tokens[1];
    if (key == "planner") {
      if (val != "dwa" && val != "teb") {
        throw ParseError(source, l.number, "planner must be 'dwa' or 'teb'");
      }
      planner = val;
      continue;
    }
    if (planner.empty()) throw ParseError(source, l.number, "'planner' must come first");
    auto as_int = [&]() { return static_cast<int>(text::to_int(val, source, l.number)); };
    if (planner == "dwa") {
      DwaConfig& c = settings.dwa;
      if (key == "n_v") {
        c.n_v = as_int();
      } else if (key == "n_omega") {
        c.n_omega = as_int();
      } else if (auto it = detail::dwa_fields().find(key); it != detail::dwa_fields().end()) {
        it->second(c) = text::to_double(val, source, l.number);
      } else {
        throw ParseError(source, l.number, "unknown dwa key '" + key + "'");
      }
    } else {
      TebConfig& c = settings.teb;
      if (key == "n_poses") {
        c.n_poses = as_int();
      } else if (key == "outer_iterations") {
        c.outer_iterations = as_int();
      } else if (key == "inner_iterations") {
        c.inner_iterations = as_int();
      } else if (key == "feasibility_poses") {
        c.feasibility_poses = as_int();
      } else if (auto it = detail::teb_fields().find(key); it != detail::teb_fields().end()) {
        it->second(c) = text::to_double(val, source, l.number);
      } else {
        throw ParseError(source, l.number, "unknown teb key '" + key + "'");
      }
    }
  }
  try {
    validate(settings.dwa);
    validate(settings.teb);
  } catch (const ValidationError& e) {
    throw ParseError(source, 0, e.what());
  }
}

inline void load_planner_config(const std::string& path, PlannerSettings& settings) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);
  parse_planner_config(in, path, settings);
}

}  // namespace mrbench
