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

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "mrbench/common.hpp"

namespace mrbench {

/// One planning cycle.
struct LogRecord {
  double t = 0.0;      // s
  double x = 0.0;      // m
  double y = 0.0;      // m
  double theta = 0.0;  // rad
  double v = 0.0;      // m/s
  double omega = 0.0;  // rad/s
  double d = 0.0;      // m, clearance against the sensed map
  double c = 0.0;      // ms (or iterations), planning cost
  double d_true = 0.0;  // m, against ground truth

  friend bool operator==(const LogRecord&, const LogRecord&) = default;
};

enum class Outcome { Success, Timeout, Collision, PlannerFailure };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Success: return "success";
    case Outcome::Timeout: return "timeout";
    case Outcome::Collision: return "collision";
    case Outcome::PlannerFailure: return "planner_failure";
  }
  return "?";
}

inline Outcome parse_outcome(std::string_view s) {
  if (s == "success") return Outcome::Success;
  if (s == "timeout") return Outcome::Timeout;
  if (s == "collision") return Outcome::Collision;
  if (s == "planner_failure") return Outcome::PlannerFailure;
  throw InputError("unknown outcome '" + std::string(s) + "'");
}

struct NavLog {
  std::vector<LogRecord> records;
  Outcome outcome = Outcome::Success;

  std::size_t size() const { return records.size(); }
};

struct MetricsConfig {
  double d_safe = 0.34;
};

struct MetricsReport {
  double d_o = 0.0;   // m
  double p_o = 0.0;   // %
  double T = 0.0;     // s
  double C = 0.0;     // ms
  double f_ps = 0.0;  // m^2
  double f_vs = 0.0;  // m/s^2
  double S = 0.0;     // m
  Outcome outcome = Outcome::Success;
  std::size_t n = 0;
};

namespace detail {

inline void require_records(const NavLog& log, std::size_t n, const char* what) {
  if (log.size() < n) {
    throw InputError(std::string(what) + ": needs at least " + std::to_string(n) + " records");
  }
}

}  // namespace detail

/// Minimum clearance over the log.
inline double safety_min_distance(const NavLog& log) {
  detail::require_records(log, 1, "safety_min_distance");
  double m = log.records[0].d;
  for (const LogRecord& r : log.records) m = std::min(m, r.d);
  return m;
}

/// Percent of the trial spent inside the danger zone, counted as the summed
/// duration of maximal runs of consecutive records with d <= d_safe. A run
/// of one record contributes nothing.
inline double safety_exposure(const NavLog& log, const MetricsConfig& cfg = {}) {
  detail::require_records(log, 2, "safety_exposure");
  const auto& r = log.records;
  const double span = r.back().t - r.front().t;
  if (!(span > 0.0)) throw InputError("safety_exposure: non-positive duration");
  double inside = 0.0;
  std::size_t k = 0;
  while (k < r.size()) {
    if (r[k].d > cfg.d_safe) {
      ++k;
      continue;
    }
    std::size_t b = k;
    while (b + 1 < r.size() && r[b + 1].d <= cfg.d_safe) ++b;
    inside += r[b].t - r[k].t;
    k = b + 1;
  }
  return inside / span * 100.0;
}

inline double efficiency_travel_time(const NavLog& log) {
  detail::require_records(log, 1, "efficiency_travel_time");
  return log.records.back().t - log.records.front().t;
}

inline double efficiency_compute(const NavLog& log) {
  detail::require_records(log, 1, "efficiency_compute");
  double s = 0.0;
  for (const LogRecord& r : log.records) s += r.c;
  return s / static_cast<double>(log.size());
}

/// Sum of squared second differences of position.
inline double smoothness_path(const NavLog& log) {
  detail::require_records(log, 3, "smoothness_path");
  const auto& r = log.records;
  double s = 0.0;
  for (std::size_t i = 1; i + 1 < r.size(); ++i) {
    const double ax = (r[i + 1].x - r[i].x) - (r[i].x - r[i - 1].x);
    const double ay = (r[i + 1].y - r[i].y) - (r[i].y - r[i - 1].y);
    s += ax * ax + ay * ay;
  }
  return s;
}

/// Mean absolute linear acceleration between consecutive records.
inline double smoothness_velocity(const NavLog& log) {
  detail::require_records(log, 2, "smoothness_velocity");
  const auto& r = log.records;
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    const double dt = r[i + 1].t - r[i].t;
    if (!(dt > 0.0)) throw InputError("smoothness_velocity: timestamps not strictly increasing");
    s += std::abs(r[i + 1].v - r[i].v) / dt;
  }
  return s / static_cast<double>(r.size() - 1);
}

inline double path_length(const NavLog& log) {
  detail::require_records(log, 1, "path_length");
  const auto& r = log.records;
  double s = 0.0;
  for (std::size_t i = 1; i < r.size(); ++i) s += std::hypot(r[i].x - r[i - 1].x, r[i].y - r[i - 1].y);
  return s;
}

/// All metrics of one trial. Metrics that need more records than a very
/// short log holds are reported as 0.
inline MetricsReport compute_report(const NavLog& log, const MetricsConfig& cfg = {}) {
  detail::require_records(log, 1, "compute_report");
  for (std::size_t i = 1; i < log.size(); ++i) {
    if (!(log.records[i].t > log.records[i - 1].t)) {
      throw InputError("compute_report: timestamps not strictly increasing");
    }
  }
  MetricsReport m;
  m.outcome = log.outcome;
  m.n = log.size();
  m.d_o = safety_min_distance(log);
  m.p_o = log.size() >= 2 ? safety_exposure(log, cfg) : 0.0;
  m.T = efficiency_travel_time(log);
  m.C = efficiency_compute(log);
  m.f_ps = log.size() >= 3 ? smoothness_path(log) : 0.0;
  m.f_vs = log.size() >= 2 ? smoothness_velocity(log) : 0.0;
  m.S = path_length(log);
  return m;
}

struct AggregateReport {
  std::size_t trials = 0;
  std::size_t successes = 0;
  MetricsReport mean;  // over successful trials only; meaningful when successes > 0
};

inline AggregateReport aggregate(const std::vector<MetricsReport>& reports) {
  AggregateReport a;
  a.trials = reports.size();
  for (const MetricsReport& r : reports) {
    if (r.outcome != Outcome::Success) continue;
    ++a.successes;
    a.mean.d_o += r.d_o;
    a.mean.p_o += r.p_o;
    a.mean.T += r.T;
    a.mean.C += r.C;
    a.mean.f_ps += r.f_ps;
    a.mean.f_vs += r.f_vs;
    a.mean.S += r.S;
    a.mean.n += r.n;
  }
  if (a.successes > 0) {
    const double k = static_cast<double>(a.successes);
    a.mean.d_o /= k;
    a.mean.p_o /= k;
    a.mean.T /= k;
    a.mean.C /= k;
    a.mean.f_ps /= k;
    a.mean.f_vs /= k;
    a.mean.S /= k;
    a.mean.n /= a.successes;
  } else {
    a.mean.outcome = Outcome::PlannerFailure;
  }
  return a;
}

}  // namespace mrbench
