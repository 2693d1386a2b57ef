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


// optbench: tune and compare the seven optimizers on the synthetic tasks.
//
//   optbench run --task cola_like --optimizer all --regime lr-only --out out/
//   optbench report --in out/
//   optbench curves --in out/

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "optbench/error.hpp"
#include "optbench/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalidConfig = 2;
constexpr int kExitNoViableTrial = 3;

int exit_code_for(optbench::ErrorCode code) {
  using optbench::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kParse:
      return kExitInvalidConfig;
    case ErrorCode::kNoViableTrial:
      return kExitNoViableTrial;
    default:
      return kExitFailure;
  }
}

struct RunArgs {
  std::string task = "cola_like";
  std::string optimizer = "all";
  std::string regime = "full";
  std::size_t trials = optbench::kMaxTrials;
  std::size_t splits = 5;
  std::size_t epochs = 20;
  std::size_t batch_size = 4;
  std::size_t size = 0;
  std::uint64_t seed = 0;
  std::string out = "optbench_out";
};

// "all", a single name, or a comma-separated list.
template <typename T, typename Parse, std::size_t N>
std::vector<T> expand(const std::string& text, const std::array<T, N>& all, Parse parse) {
  if (text == "all") return {all.begin(), all.end()};
  std::vector<T> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    const T value = parse(std::string_view(text).substr(start, comma - start));
    if (std::find(out.begin(), out.end(), value) == out.end()) out.push_back(value);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int do_run(const RunArgs& args) {
  using namespace optbench;
  const auto tasks = expand(args.task, kAllTasks, parse_task_name);
  const auto optimizers = expand(args.optimizer, kAllOptimizers, parse_optimizer_kind);
  const auto regimes = expand(args.regime,
                              std::array{Regime::kDefaults, Regime::kLrOnly, Regime::kFull},
                              parse_regime);
  std::vector<ExperimentResult> results;
  for (TaskName task : tasks) {
    for (OptimizerKind opt : optimizers) {
      for (Regime regime : regimes) {
        RunSpec run;
        run.task = task_spec(task);
        run.optimizer = opt;
        run.regime = regime;
        run.epochs = args.epochs;
        run.batch_size = args.batch_size;
        run.n_splits = args.splits;
        run.trial_budget = args.trials;
        run.master_seed = args.seed;
        run.dataset_size = args.size;
        validate(run);
        std::cerr << "running " << to_string(task) << " / " << to_string(opt) << " / "
                  << to_string(regime) << "\n";
        results.push_back(run_experiment(run));
      }
    }
  }
  std::vector<std::string> warnings;
  write_run_outputs(results, args.out, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  std::cout << report_from_dir(args.out).text;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimizer benchmarking harness"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Tune and evaluate optimizers on a task");
  run->add_option("--task", run_args.task, "Task name, comma list or 'all'")->capture_default_str();
  run->add_option("--optimizer", run_args.optimizer, "Optimizer name, comma list or 'all'")
      ->capture_default_str();
  run->add_option("--regime", run_args.regime, "defaults | lr-only | full | all")
      ->capture_default_str();
  run->add_option("--trials", run_args.trials, "Trial budget per study (<= 30)")
      ->capture_default_str();
  run->add_option("--splits", run_args.splits, "Random train/dev/test splits")
      ->capture_default_str();
  run->add_option("--epochs", run_args.epochs, "Epochs per trial")->capture_default_str();
  run->add_option("--batch-size", run_args.batch_size, "Mini-batch size")
      ->capture_default_str();
  run->add_option("--size", run_args.size, "Dataset size (0: task default)")
      ->capture_default_str();
  run->add_option("--seed", run_args.seed, "Master seed")->capture_default_str();
  run->add_option("--out", run_args.out, "Output directory")->capture_default_str();

  std::string report_in;
  auto* report = app.add_subcommand("report", "Rebuild report.txt from results.csv");
  report->add_option("--in", report_in, "Directory written by 'run'")->required();

  std::string curves_in;
  auto* curves = app.add_subcommand("curves", "Re-aggregate per-split learning curves");
  curves->add_option("--in", curves_in, "Directory written by 'run'")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidConfig;
  }

  try {
    if (*run) return do_run(run_args);
    if (*report) {
      std::cout << optbench::report_from_dir(report_in).text;
      return kExitOk;
    }
    if (*curves) {
      std::vector<std::string> warnings;
      for (const auto& p : optbench::curves_from_dir(curves_in, &warnings)) {
        std::cout << p.string() << "\n";
      }
      for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
      return kExitOk;
    }
  } catch (const optbench::Error& e) {
    std::cerr << "error (" << optbench::to_string(e.code()) << "): " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
