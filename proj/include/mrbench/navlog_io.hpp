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

// Trial logs (".csv"):
//
//   t,x,y,theta,v,omega,d_obs,c_ms,d_true
//   0,1.5,2,0,0,0,0.812,231,0.812
//   ...
//   # scenario: office
//   # outcome: success
//
// The d_true column is optional on input. Metadata lines follow the rows.

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mrbench/metrics.hpp"
#include "mrbench/text_io.hpp"

namespace mrbench {

inline constexpr const char* kLogHeader = "t,x,y,theta,v,omega,d_obs,c_ms,d_true";
inline constexpr const char* kLogHeaderShort = "t,x,y,theta,v,omega,d_obs,c_ms";

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct LogFile {
  NavLog log;
  Metadata metadata;

  /// Value of a metadata key, or `fallback` when absent.
  std::string get(const std::string& key, const std::string& fallback = "") const {
    for (const auto& [k, v] : metadata) {
      if (k == key) return v;
    }
    return fallback;
  }
};

/// Metadata keys whose values depend on the machine, not the run.
inline bool is_wallclock_key(const std::string& key) { return key.rfind("wall_", 0) == 0; }

inline std::string navlog_to_string(const NavLog& log, const Metadata& metadata) {
  std::ostringstream os;
  auto n = [](double v) { return format_number(v); };
  os << kLogHeader << '\n';
  for (const LogRecord& r : log.records) {
    os << n(r.t) << ',' << n(r.x) << ',' << n(r.y) << ',' << n(r.theta) << ',' << n(r.v) << ','
       << n(r.omega) << ',' << n(r.d) << ',' << n(r.c) << ',' << n(r.d_true) << '\n';
  }
  bool has_outcome = false;
  for (const auto& [k, v] : metadata) {
    os << "# " << k << ": " << v << '\n';
    if (k == "outcome") has_outcome = true;
  }
  if (!has_outcome) os << "# outcome: " << to_string(log.outcome) << '\n';
  return os.str();
}

inline LogFile parse_navlog(std::istream& is, const std::string& source = "<log>") {
  LogFile f;
  std::string line;
  int number = 0;
  bool header = false;
  bool with_true = false;
  bool in_meta = false;
  while (std::getline(is, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      in_meta = true;
      const std::string body = line.substr(1);
      const auto colon = body.find(':');
      if (colon == std::string::npos) throw ParseError(source, number, "metadata needs 'key: value'");
      auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t");
        const auto b = s.find_last_not_of(" \t");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
      };
      f.metadata.emplace_back(trim(body.substr(0, colon)), trim(body.substr(colon + 1)));
      continue;
    }
    if (!header) {
      if (line == kLogHeader) {
        with_true = true;
      } else if (line != kLogHeaderShort) {
        throw ParseError(source, number, "unexpected header '" + line + "'");
      }
      header = true;
      continue;
    }
    if (in_meta) throw ParseError(source, number, "data row after metadata");
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    const std::size_t want = with_true ? 9 : 8;
    if (cells.size() != want) {
      throw ParseError(source, number,
                       "expected " + std::to_string(want) + " columns, got " + std::to_string(cells.size()));
    }
    auto v = [&](std::size_t k) { return text::to_double(cells[k], source, number); };
    LogRecord r{v(0), v(1), v(2), v(3), v(4), v(5), v(6), v(7), with_true ? v(8) : v(6)};
    f.log.records.push_back(r);
  }
  if (!header) throw ParseError(source, number, "missing header");
  const std::string outcome = f.get("outcome", "success");
  try {
    f.log.outcome = parse_outcome(outcome);
  } catch (const InputError& e) {
    throw ParseError(source, number, e.what());
  }
  return f;
}

inline LogFile load_navlog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open log file: " + path);
  return parse_navlog(in, path);
}

inline void save_navlog(const std::string& path, const NavLog& log, const Metadata& metadata) {
  text::write_file(path, navlog_to_string(log, metadata));
}

}  // namespace mrbench
