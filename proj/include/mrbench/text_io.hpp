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

// Helpers shared by the line-oriented `key value...` file formats.

#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "mrbench/common.hpp"

namespace mrbench::text {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

/// Splits a stream into non-empty whitespace-tokenized lines, dropping
/// everything after '#'.
inline std::vector<Line> tokenize(std::istream& is) {
  std::vector<Line> out;
  std::string raw;
  int n = 0;
  while (std::getline(is, raw)) {
    ++n;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    Line line{n, {}};
    for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

inline double to_double(const std::string& tok, const std::string& source, int line) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw ParseError(source, line, "expected a number, got '" + tok + "'");
  }
  return v;
}

inline long long to_int(const std::string& tok, const std::string& source, int line) {
  long long v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
    throw ParseError(source, line, "expected an integer, got '" + tok + "'");
  }
  return v;
}

inline void expect_arity(const Line& l, std::size_t n, const std::string& source) {
  if (l.tokens.size() != n) {
    throw ParseError(source, l.number,
                     "'" + l.tokens[0] + "' expects " + std::to_string(n - 1) + " values, got " +
                         std::to_string(l.tokens.size() - 1));
  }
}

inline std::vector<Line> tokenize_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  return tokenize(in);
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path.string());
  out << content;
  if (!out) throw Error("write failed: " + path.string());
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace mrbench::text
