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


#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>

#include "optbench/error.hpp"
#include "optbench/harness.hpp"

namespace optbench {

namespace {

namespace fs = std::filesystem;

std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_line(std::string_view line, char sep = ',') {
  std::vector<std::string> cells;
  std::size_t at = 0;
  while (true) {
    const auto next = line.find(sep, at);
    cells.emplace_back(line.substr(at, next == std::string_view::npos ? next : next - at));
    if (next == std::string_view::npos) break;
    at = next + 1;
  }
  return cells;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return out;
}

double to_real(const std::string& s) {
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kParse, "'" + s + "' is not a number");
  }
  return v;
}

std::size_t to_index(const std::string& s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kParse, "'" + s + "' is not an index");
  }
  return v;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorCode::kIo, "short write to " + path.string());
}

template <typename Enum, std::size_t N>
std::size_t rank_of(const std::array<Enum, N>& all, std::string_view name) {
  for (std::size_t i = 0; i < N; ++i) {
    if (to_string(all[i]) == name) return i;
  }
  return N;
}

std::size_t regime_rank(std::string_view r) {
  return rank_of(std::array{Regime::kDefaults, Regime::kLrOnly, Regime::kFull}, r);
}

constexpr std::string_view kResultsHeader =
    "task,optimizer,regime,split,test_score,best_dev,best_epoch";

}  // namespace

// ---------------------------------------------------------------------------
// results.csv

std::vector<ResultRow> result_rows(std::span<const ExperimentResult> results) {
  std::vector<ResultRow> rows;
  for (const auto& r : results) {
    for (const auto& s : r.splits) {
      rows.push_back({std::string(to_string(r.task)), std::string(to_string(r.optimizer)),
                      std::string(to_string(r.regime)), s.split, s.test_score, s.best_dev,
                      s.best_epoch});
    }
  }
  return rows;
}

std::string results_csv(std::span<const ResultRow> rows) {
  std::string out(kResultsHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += r.task + ',' + r.optimizer + ',' + r.regime + ',' + std::to_string(r.split) + ',' +
           exact(r.test_score) + ',' + exact(r.best_dev) + ',' + std::to_string(r.best_epoch) +
           '\n';
  }
  return out;
}

std::vector<ResultRow> parse_results_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front() != kResultsHeader) {
    throw Error(ErrorCode::kParse, "results.csv: unexpected header");
  }
  std::vector<ResultRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto c = split_line(lines[i]);
    if (c.size() != 7) {
      throw Error(ErrorCode::kParse, "results.csv line " + std::to_string(i + 1) +
                                         ": expected 7 columns");
    }
    rows.push_back({c[0], c[1], c[2], to_index(c[3]), to_real(c[4]), to_real(c[5]),
                    to_index(c[6])});
  }
  return rows;
}

std::vector<Summary> summarize(std::span<const ResultRow> rows) {
  using Key = std::tuple<std::size_t, std::size_t, std::size_t, std::string, std::string,
                         std::string>;
  std::map<Key, std::vector<double>> groups;
  for (const auto& r : rows) {
    groups[{rank_of(kAllTasks, r.task), rank_of(kAllOptimizers, r.optimizer),
            regime_rank(r.regime), r.task, r.optimizer, r.regime}]
        .push_back(r.test_score);
  }
  std::vector<Summary> out;
  for (const auto& [key, scores] : groups) {
    const MeanStd ms = mean_std(scores);
    const std::string& task = std::get<3>(key);
    out.push_back({task, task_spec(parse_task_name(task)).metric, std::get<4>(key),
                   std::get<5>(key), ms.mean, ms.std, scores.size()});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tables

std::string format_cell(MetricKind metric, double mean, double std) {
  const double scale = is_percent_scale(metric) ? 100.0 : 1.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f (%.2f)", mean * scale, std * scale);
  return buf;
}

Report format_report(std::span<const Summary> summaries) {
  Report report;
  report.csv = "task,optimizer,regime,metric,mean,std,n_splits\n";
  for (const auto& s : summaries) {
    report.csv += s.task + ',' + s.optimizer + ',' + s.regime + ',' +
                  std::string(to_string(s.metric)) + ',' + exact(s.mean) + ',' +
                  exact(s.std) + ',' + std::to_string(s.n_splits) + '\n';
  }

  std::set<std::pair<std::size_t, std::string>> regimes;
  for (const auto& s : summaries) regimes.insert({regime_rank(s.regime), s.regime});
  for (const auto& [rank, regime] : regimes) {
    std::set<std::pair<std::size_t, std::string>> tasks;
    std::set<std::pair<std::size_t, std::string>> optimizers;
    std::map<std::pair<std::string, std::string>, const Summary*> cell;
    std::map<std::string, double> column_best;
    for (const auto& s : summaries) {
      if (s.regime != regime) continue;
      tasks.insert({rank_of(kAllTasks, s.task), s.task});
      optimizers.insert({rank_of(kAllOptimizers, s.optimizer), s.optimizer});
      cell[{s.optimizer, s.task}] = &s;
      auto [it, fresh] = column_best.emplace(s.task, s.mean);
      if (!fresh) it->second = std::max(it->second, s.mean);
    }

    std::vector<std::vector<std::string>> grid;
    std::vector<std::string> header{"optimizer"};
    for (const auto& [r, t] : tasks) {
      header.push_back(t + " (" + std::string(to_string(task_spec(parse_task_name(t)).metric)) +
                       ")");
    }
    grid.push_back(header);
    for (const auto& [r, opt] : optimizers) {
      std::vector<std::string> line{opt};
      for (const auto& [tr, t] : tasks) {
        const auto it = cell.find({opt, t});
        if (it == cell.end()) {
          line.emplace_back("-");
          continue;
        }
        const Summary& s = *it->second;
        std::string text = format_cell(s.metric, s.mean, s.std);
        if (s.mean == column_best[t]) text += " *";
        line.push_back(text);
      }
      grid.push_back(line);
    }
    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& line : grid) {
      for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
    }
    if (!report.text.empty()) report.text += '\n';
    report.text += "regime: " + regime + "\n";
    for (const auto& line : grid) {
      std::string row;
      for (std::size_t i = 0; i < line.size(); ++i) {
        row += line[i];
        if (i + 1 < line.size()) row += std::string(width[i] - line[i].size() + 2, ' ');
      }
      report.text += row + '\n';
    }
  }
  return report;
}

Report format_report(std::span<const ExperimentResult> results) {
  const auto rows = result_rows(results);
  return format_report(summarize(rows));
}

// ---------------------------------------------------------------------------
// Curves

std::vector<CurveRow> aggregate_curves(std::span<const LearningCurve> curves,
                                       std::vector<std::string>* warnings) {
  if (curves.empty()) throw Error(ErrorCode::kInvalidArgument, "no curves to aggregate");
  std::size_t length = curves.front().points.size();
  bool unequal = false;
  for (const auto& c : curves) {
    unequal = unequal || c.points.size() != length;
    length = std::min(length, c.points.size());
  }
  if (unequal && warnings != nullptr) {
    warnings->push_back("curves differ in length; truncated to " + std::to_string(length) +
                        " steps");
  }
  std::vector<CurveRow> rows;
  rows.reserve(length);
  std::vector<double> losses;
  std::vector<double> devs;
  for (std::size_t i = 0; i < length; ++i) {
    losses.clear();
    devs.clear();
    for (const auto& c : curves) {
      losses.push_back(c.points[i].loss);
      if (c.points[i].dev) devs.push_back(*c.points[i].dev);
    }
    const MeanStd l = mean_std(losses);
    CurveRow row{curves.front().points[i].step, l.mean, l.std, std::nullopt, std::nullopt};
    if (!devs.empty()) {
      const MeanStd d = mean_std(devs);
      row.mean_dev = d.mean;
      row.std_dev = d.std;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string curve_csv(const LearningCurve& curve) {
  std::string out = "step,loss,dev\n";
  for (const auto& p : curve.points) {
    out += std::to_string(p.step) + ',' + exact(p.loss) + ',' + (p.dev ? exact(*p.dev) : "") +
           '\n';
  }
  return out;
}

LearningCurve parse_curve_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front() != "step,loss,dev") {
    throw Error(ErrorCode::kParse, "curve CSV: unexpected header");
  }
  LearningCurve curve;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto c = split_line(lines[i]);
    if (c.size() != 3) throw Error(ErrorCode::kParse, "curve CSV: expected 3 columns");
    CurvePoint p{to_index(c[0]), to_real(c[1]), std::nullopt};
    if (!c[2].empty()) p.dev = to_real(c[2]);
    curve.points.push_back(p);
  }
  return curve;
}

std::string aggregated_curve_csv(std::span<const CurveRow> rows) {
  std::string out = "step,mean_loss,std_loss,mean_dev,std_dev\n";
  for (const auto& r : rows) {
    out += std::to_string(r.step) + ',' + exact(r.mean_loss) + ',' + exact(r.std_loss) + ',' +
           (r.mean_dev ? exact(*r.mean_dev) : "") + ',' + (r.std_dev ? exact(*r.std_dev) : "") +
           '\n';
  }
  return out;
}

std::string result_stem(std::string_view task, std::string_view optimizer,
                        std::string_view regime) {
  return std::string(task) + "_" + std::string(optimizer) + "_" + std::string(regime);
}

fs::path export_curves(const ExperimentResult& result, const fs::path& dir,
                       std::vector<std::string>* warnings) {
  std::vector<LearningCurve> curves;
  for (const auto& s : result.splits) curves.push_back(s.curve);
  const auto rows = aggregate_curves(curves, warnings);
  const fs::path path = dir / ("curve_" + result_stem(to_string(result.task),
                                                      to_string(result.optimizer),
                                                      to_string(result.regime)) +
                               ".csv");
  write_file(path, aggregated_curve_csv(rows));
  return path;
}

// ---------------------------------------------------------------------------
// Output directories

void write_run_outputs(std::span<const ExperimentResult> results, const fs::path& dir,
                       std::vector<std::string>* warnings) {
  fs::create_directories(dir);
  const fs::path results_path = dir / "results.csv";

  // Rows from earlier runs survive unless this run recomputed them.
  using Key = std::tuple<std::string, std::string, std::string, std::size_t>;
  std::map<Key, ResultRow> merged;
  if (fs::exists(results_path)) {
    for (auto& r : parse_results_csv(read_file(results_path))) {
      merged[{r.task, r.optimizer, r.regime, r.split}] = r;
    }
  }
  for (auto& r : result_rows(results)) merged[{r.task, r.optimizer, r.regime, r.split}] = r;
  std::vector<ResultRow> rows;
  for (auto& [key, r] : merged) rows.push_back(r);
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::make_tuple(rank_of(kAllTasks, a.task), rank_of(kAllOptimizers, a.optimizer),
                           regime_rank(a.regime), a.split) <
           std::make_tuple(rank_of(kAllTasks, b.task), rank_of(kAllOptimizers, b.optimizer),
                           regime_rank(b.regime), b.split);
  });
  write_file(results_path, results_csv(rows));

  for (const auto& r : results) {
    const std::string stem =
        result_stem(to_string(r.task), to_string(r.optimizer), to_string(r.regime));
    for (const auto& s : r.splits) {
      const std::string suffix = stem + "_split" + std::to_string(s.split);
      write_file(dir / ("study_" + suffix + ".json"), study_to_json(s.study));
      write_file(dir / ("curve_" + suffix + ".csv"), curve_csv(s.curve));
    }
    export_curves(r, dir, warnings);
  }
  const Report report = format_report(summarize(rows));
  write_file(dir / "report.txt", report.text);
  write_file(dir / "report.csv", report.csv);
}

Report report_from_dir(const fs::path& dir) {
  const auto rows = parse_results_csv(read_file(dir / "results.csv"));
  if (rows.empty()) throw Error(ErrorCode::kInvalidArgument, "results.csv has no rows");
  Report report = format_report(summarize(rows));
  write_file(dir / "report.txt", report.text);
  write_file(dir / "report.csv", report.csv);
  return report;
}

std::vector<fs::path> curves_from_dir(const fs::path& dir, std::vector<std::string>* warnings) {
  // curve_<stem>_split<k>.csv grouped by stem.
  std::map<std::string, std::map<std::size_t, fs::path>> groups;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("curve_", 0) != 0 || entry.path().extension() != ".csv") continue;
    const auto at = name.rfind("_split");
    if (at == std::string::npos) continue;
    const std::string stem = name.substr(6, at - 6);
    const std::string k = name.substr(at + 6, name.size() - at - 6 - 4);
    groups[stem][to_index(k)] = entry.path();
  }
  std::vector<fs::path> written;
  for (const auto& [stem, files] : groups) {
    std::vector<LearningCurve> curves;
    for (const auto& [k, path] : files) curves.push_back(parse_curve_csv(read_file(path)));
    const auto rows = aggregate_curves(curves, warnings);
    const fs::path out = dir / ("curve_" + stem + ".csv");
    write_file(out, aggregated_curve_csv(rows));
    written.push_back(out);
  }
  return written;
}

}  // namespace optbench
