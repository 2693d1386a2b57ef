// Copyright 2026 The optbench Authors
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


#include <charconv>
#include <cstdio>
#include <set>
#include <string>

#include "optbench/error.hpp"
#include "optbench/optimizers.hpp"

namespace optbench {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view key, std::string_view text, int line) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kParse, "line " + std::to_string(line) + ": '" +
                                       std::string(text) + "' is not a number for " +
                                       std::string(key));
  }
  return value;
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string serialize_config(const OptimizerConfig& c) {
  std::string out;
  out += "kind = " + std::string(to_string(c.kind)) + "\n";
  out += "epsilon = " + format_real(c.epsilon) + "\n";
  out += "rho1 = " + format_real(c.rho1) + "\n";
  out += "rho2 = " + format_real(c.rho2) + "\n";
  out += "delta = " + format_real(c.delta) + "\n";
  out += "alpha = " + format_real(c.alpha) + "\n";
  out += "lambda = " + format_real(c.lambda) + "\n";
  out += "eps_star = " + format_real(c.eps_star) + "\n";
  out += "gamma = " + format_real(c.gamma) + "\n";
  return out;
}

OptimizerConfig parse_config(std::string_view text) {
  struct Entry {
    std::string key;
    std::string value;
    int line;
  };
  std::vector<Entry> entries;
  std::set<std::string> seen;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kParse,
                  "line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (!seen.insert(key).second) {
      throw Error(ErrorCode::kParse, "duplicate key '" + key + "'");
    }
    entries.push_back({std::move(key), std::move(value), line_no});
  }

  OptimizerConfig config;
  bool have_kind = false;
  for (const auto& e : entries) {
    if (e.key == "kind") {
      config = default_config(parse_optimizer_kind(e.value));
      have_kind = true;
    }
  }
  if (!have_kind) throw Error(ErrorCode::kParse, "missing required key 'kind'");

  for (const auto& e : entries) {
    if (e.key == "kind") continue;
    double* field = nullptr;
    if (e.key == "epsilon") field = &config.epsilon;
    else if (e.key == "rho1") field = &config.rho1;
    else if (e.key == "rho2") field = &config.rho2;
    else if (e.key == "delta") field = &config.delta;
    else if (e.key == "alpha") field = &config.alpha;
    else if (e.key == "lambda") field = &config.lambda;
    else if (e.key == "eps_star") field = &config.eps_star;
    else if (e.key == "gamma") field = &config.gamma;
    if (field == nullptr) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(e.line) +
                                         ": unknown key '" + e.key + "'");
    }
    *field = parse_real(e.key, e.value, e.line);
  }
  validate(config);
  return config;
}

}  // namespace optbench
