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
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "optbench/error.hpp"
#include "optbench/objectives.hpp"

namespace optbench {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

void write_dataset_csv(const Dataset& data, std::ostream& out) {
  for (std::size_t j = 0; j < data.dim; ++j) out << 'f' << j << ',';
  out << "target\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (double x : data.row(i)) out << fmt(x) << ',';
    out << fmt(data.targets[i]) << '\n';
  }
}

Dataset read_dataset_csv(const TaskSpec& spec, std::istream& in) {
  Dataset data;
  data.spec = spec;
  data.dim = spec.feature_dim;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParse, "empty dataset CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv_line(line);
  if (header.size() != data.dim + 1 || header.back() != "target") {
    throw Error(ErrorCode::kParse, "dataset CSV header does not match task dimension");
  }
  for (std::size_t j = 0; j < data.dim; ++j) {
    if (header[j] != "f" + std::to_string(j)) {
      throw Error(ErrorCode::kParse, "unexpected column '" + header[j] + "'");
    }
  }
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++row;
    const auto cells = split_csv_line(line);
    if (cells.size() != data.dim + 1) {
      throw Error(ErrorCode::kParse, "row " + std::to_string(row) + " has " +
                                         std::to_string(cells.size()) + " cells");
    }
    for (std::size_t j = 0; j <= data.dim; ++j) {
      double v = 0.0;
      const auto& c = cells[j];
      auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (ec != std::errc() || ptr != c.data() + c.size() || !std::isfinite(v)) {
        throw Error(ErrorCode::kParse, "row " + std::to_string(row) + ": bad number '" +
                                           c + "'");
      }
      if (j < data.dim) {
        data.features.push_back(v);
      } else {
        data.targets.push_back(v);
      }
    }
    const double y = data.targets.back();
    const bool ok = spec.is_regression()
                        ? (y >= kScoreMin && y <= kScoreMax)
                        : (y == std::floor(y) && y >= 0 && y < spec.n_classes);
    if (!ok) {
      throw Error(ErrorCode::kParse,
                  "row " + std::to_string(row) + ": target outside the task's range");
    }
  }
  return data;
}

std::string split_to_json(const DataSplit& split) {
  nlohmann::json j;
  j["train"] = split.train;
  j["dev"] = split.dev;
  j["test"] = split.test;
  j["split_seed"] = split.split_seed;
  return j.dump();
}

DataSplit split_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    DataSplit split;
    split.train = j.at("train").get<std::vector<std::size_t>>();
    split.dev = j.at("dev").get<std::vector<std::size_t>>();
    split.test = j.at("test").get<std::vector<std::size_t>>();
    split.split_seed = j.value("split_seed", std::uint64_t{0});
    return split;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("split JSON: ") + e.what());
  }
}

}  // namespace optbench
