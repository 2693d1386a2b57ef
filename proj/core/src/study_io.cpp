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


#include <cmath>
#include <limits>
#include <string>

#include <json.hpp>

#include "optbench/error.hpp"
#include "optbench/tuner.hpp"

namespace optbench {

namespace {

using nlohmann::json;

json config_json(const OptimizerConfig& c) {
  return json{{"kind", std::string(to_string(c.kind))},
              {"epsilon", c.epsilon},
              {"rho1", c.rho1},
              {"rho2", c.rho2},
              {"delta", c.delta},
              {"alpha", c.alpha},
              {"lambda", c.lambda},
              {"eps_star", c.eps_star},
              {"gamma", c.gamma}};
}

OptimizerConfig config_from(const json& j) {
  OptimizerConfig c = default_config(parse_optimizer_kind(j.at("kind").get<std::string>()));
  for (const auto& [key, value] : j.items()) {
    if (key == "kind") continue;
    const double v = value.get<double>();
    if (key == "epsilon") c.epsilon = v;
    else if (key == "rho1") c.rho1 = v;
    else if (key == "rho2") c.rho2 = v;
    else if (key == "delta") c.delta = v;
    else if (key == "alpha") c.alpha = v;
    else if (key == "lambda") c.lambda = v;
    else if (key == "eps_star") c.eps_star = v;
    else if (key == "gamma") c.gamma = v;
    else throw Error(ErrorCode::kParse, "unknown config key '" + key + "'");
  }
  return c;
}

// JSON has no infinities; a failed trial's -inf is stored as null.
json real_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double real_from(const json& j) {
  return j.is_null() ? -std::numeric_limits<double>::infinity() : j.get<double>();
}

TrialStatus status_from(const std::string& s) {
  for (TrialStatus t : {TrialStatus::kCompleted, TrialStatus::kPruned, TrialStatus::kFailed}) {
    if (to_string(t) == s) return t;
  }
  throw Error(ErrorCode::kParse, "unknown trial status '" + s + "'");
}

}  // namespace

std::string study_to_json(const StudyRecord& study) {
  json trials = json::array();
  for (const auto& t : study.trials) {
    json scores = json::array();
    for (double s : t.epoch_scores) scores.push_back(real_or_null(s));
    trials.push_back(json{{"config", config_json(t.config)},
                          {"epoch_scores", scores},
                          {"status", std::string(to_string(t.status))},
                          {"best_epoch", t.best_epoch},
                          {"best_dev", real_or_null(t.best_dev)}});
  }
  json j{{"optimizer", std::string(to_string(study.optimizer))},
         {"regime", std::string(to_string(study.regime))},
         {"sampler_seed", study.sampler_seed},
         {"trials", trials}};
  return j.dump(2);
}

StudyRecord study_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    StudyRecord study;
    study.optimizer = parse_optimizer_kind(j.at("optimizer").get<std::string>());
    study.regime = parse_regime(j.at("regime").get<std::string>());
    study.sampler_seed = j.at("sampler_seed").get<std::uint64_t>();
    for (const auto& tj : j.at("trials")) {
      TrialRecord t;
      t.config = config_from(tj.at("config"));
      for (const auto& s : tj.at("epoch_scores")) t.epoch_scores.push_back(real_from(s));
      t.status = status_from(tj.at("status").get<std::string>());
      t.best_epoch = tj.at("best_epoch").get<std::size_t>();
      t.best_dev = real_from(tj.at("best_dev"));
      study.trials.push_back(std::move(t));
    }
    return study;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("study JSON: ") + e.what());
  }
}

}  // namespace optbench
