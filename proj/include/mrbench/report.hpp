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

// Group comparison tables: one row per (scenario, pair), one column per
// (metric, planner). Failed trials show "-" in every cell of their planner.

#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "mrbench/metrics.hpp"
#include "mrbench/navlog_io.hpp"

namespace mrbench {

struct TrialSummary {
  std::string group;
  std::string scenario;
  std::size_t pair = 0;
  std::string planner;
  std::string cost_mode = "wallclock";
  MetricsReport report;
};

inline TrialSummary summarize(const LogFile& f, const MetricsConfig& cfg = {}) {
  TrialSummary s;
  s.group = f.get("group", "ungrouped");
  s.scenario = f.get("scenario", "?");
  s.pair = static_cast<std::size_t>(std::stoul(f.get("pair", "0")));
  s.planner = f.get("planner", "?");
  s.cost_mode = f.get("cost_mode", "wallclock");
  s.report = compute_report(f.log, cfg);
  return s;
}

struct MetricColumn {
  const char* label;
  double MetricsReport::*field;
};

inline std::vector<MetricColumn> metric_columns(const std::string& cost_mode) {
  return {{"d_o [m]", &MetricsReport::d_o},
          {"p_o [%]", &MetricsReport::p_o},
          {"T [s]", &MetricsReport::T},
          {cost_mode == "iterations" ? "C [iter]" : "C [ms]", &MetricsReport::C},
          {"f_ps [m^2]", &MetricsReport::f_ps},
          {"f_vs [m/s^2]", &MetricsReport::f_vs},
          {"S [m]", &MetricsReport::S}};
}

/// Rows and cells of one group's table, as strings.
struct GroupTable {
  std::string group;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline GroupTable build_group_table(const std::string& group, std::vector<TrialSummary> trials) {
  std::erase_if(trials, [&](const TrialSummary& t) { return t.group != group; });
  std::sort(trials.begin(), trials.end(), [](const TrialSummary& a, const TrialSummary& b) {
    return std::tie(a.scenario, a.pair, a.planner) < std::tie(b.scenario, b.pair, b.planner);
  });
  std::set<std::string> planner_set;
  std::string mode = "wallclock";
  for (const TrialSummary& t : trials) {
    planner_set.insert(t.planner);
    mode = t.cost_mode;
  }
  const std::vector<std::string> planners(planner_set.begin(), planner_set.end());
  const auto cols = metric_columns(mode);

  GroupTable table;
  table.group = group;
  table.header = {"Scenario", "Pair"};
  for (const MetricColumn& c : cols) {
    for (const std::string& p : planners) {
      std::string up = p;
      for (char& ch : up) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      table.header.push_back(std::string(c.label) + " " + up);
    }
  }
  std::map<std::tuple<std::string, std::size_t, std::string>, const TrialSummary*> index;
  std::vector<std::pair<std::string, std::size_t>> keys;
  for (const TrialSummary& t : trials) {
    index[{t.scenario, t.pair, t.planner}] = &t;
    if (keys.empty() || keys.back() != std::make_pair(t.scenario, t.pair)) {
      keys.emplace_back(t.scenario, t.pair);
    }
  }
  std::map<std::string, std::vector<MetricsReport>> per_planner;
  for (const auto& [scene, pair] : keys) {
    std::vector<std::string> row = {scene, std::to_string(pair + 1)};
    for (const MetricColumn& c : cols) {
      for (const std::string& p : planners) {
        const auto it = index.find({scene, pair, p});
        if (it == index.end() || it->second->report.outcome != Outcome::Success) {
          row.push_back("-");
        } else {
          row.push_back(format_number(it->second->report.*(c.field)));
        }
      }
    }
    table.rows.push_back(std::move(row));
  }
  for (const TrialSummary& t : trials) per_planner[t.planner].push_back(t.report);
  std::vector<std::string> mean_row = {"mean (successes)", ""};
  std::vector<std::string> count_row = {"successes", ""};
  std::map<std::string, AggregateReport> agg;
  for (const std::string& p : planners) agg[p] = aggregate(per_planner[p]);
  for (const MetricColumn& c : cols) {
    for (const std::string& p : planners) {
      const AggregateReport& a = agg[p];
      mean_row.push_back(a.successes > 0 ? format_number(a.mean.*(c.field)) : "-");
      count_row.push_back(std::to_string(a.successes) + "/" + std::to_string(a.trials));
    }
  }
  table.rows.push_back(std::move(mean_row));
  table.rows.push_back(std::move(count_row));
  return table;
}

inline std::string render_markdown(const GroupTable& t) {
  std::ostringstream os;
  os << "## " << t.group << "\n\n";
  os << '|';
  for (const std::string& h : t.header) os << ' ' << h << " |";
  os << "\n|";
  for (std::size_t k = 0; k < t.header.size(); ++k) os << (k < 2 ? " :-- |" : " --: |");
  os << '\n';
  for (const auto& row : t.rows) {
    os << '|';
    for (const std::string& c : row) os << ' ' << c << " |";
    os << '\n';
  }
  return os.str();
}

inline std::string render_csv(const GroupTable& t) {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) os << ',';
      const bool quote = cells[k].find_first_of(",\"") != std::string::npos;
      if (quote) {
        os << '"';
        for (char ch : cells[k]) os << (ch == '"' ? "\"\"" : std::string(1, ch));
        os << '"';
      } else {
        os << cells[k];
      }
    }
    os << '\n';
  };
  line(t.header);
  for (const auto& row : t.rows) line(row);
  return os.str();
}

/// Groups present in `trials`, in canonical order.
inline std::vector<std::string> groups_of(const std::vector<TrialSummary>& trials) {
  static const std::vector<std::string> canonical = {"static", "partially_unknown", "dynamic"};
  std::set<std::string> seen;
  for (const TrialSummary& t : trials) seen.insert(t.group);
  std::vector<std::string> out;
  for (const std::string& g : canonical) {
    if (seen.erase(g)) out.push_back(g);
  }
  out.insert(out.end(), seen.begin(), seen.end());
  return out;
}

/// Writes `<dir>/<group>.md` and `<dir>/<group>.csv` for every group.
inline std::vector<std::string> write_tables(const std::filesystem::path& dir,
                                             const std::vector<TrialSummary>& trials) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;
  for (const std::string& g : groups_of(trials)) {
    const GroupTable t = build_group_table(g, trials);
    text::write_file(dir / (g + ".md"), render_markdown(t));
    text::write_file(dir / (g + ".csv"), render_csv(t));
    written.push_back((dir / (g + ".md")).string());
    written.push_back((dir / (g + ".csv")).string());
  }
  return written;
}

/// Summaries of every trial log under `dir` (recursively), sorted by path.
inline std::vector<TrialSummary> collect_logs(const std::filesystem::path& dir,
                                              const MetricsConfig& cfg = {}) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".csv") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<TrialSummary> out;
  for (const auto& f : files) out.push_back(summarize(load_navlog(f.string()), cfg));
  return out;
}

}  // namespace mrbench
