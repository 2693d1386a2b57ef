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


// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "optbench/harness.hpp"
#include "optbench/metrics.hpp"
#include "optbench/objectives.hpp"
#include "optbench/optimizers.hpp"
#include "optbench/tuner.hpp"
#include "oracles.hpp"
#include "reference_optimizers.hpp"

namespace fs = std::filesystem;
using namespace optbench;

namespace {

// Collects failures for one criterion.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 8) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void near(double got, double want, double rel, const std::string& what) {
    const double scale = std::max(std::fabs(want), 1e-300);
    std::ostringstream os;
    os.precision(17);
    os << what << ": got " << got << ", want " << want;
    expect(std::fabs(got - want) <= rel * scale, os.str());
  }
  bool ok() const { return failed_ == 0; }
  std::size_t checks() const { return checks_; }
  std::size_t failed() const { return failed_; }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::size_t checks_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
};

// Agrees with a quoted value to `digits` significant figures. Quoted values
// are sometimes truncated rather than rounded, so either reading is accepted.
bool same_sig(double got, double want, int digits) {
  char a[64], b[64], t[64];
  std::snprintf(a, sizeof a, "%.*e", digits - 1, got);
  std::snprintf(b, sizeof b, "%.*e", digits - 1, want);
  std::snprintf(t, sizeof t, "%.*e", digits + 4, got);
  // Truncate the long form back to `digits` significant figures.
  std::string trunc(t);
  const auto e = trunc.find('e');
  const auto dot = trunc.find('.');
  trunc = trunc.substr(0, dot + digits) + trunc.substr(e);
  return std::string(a) == b || trunc == b;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int report(int id, const std::string& name, const Checker& c, double secs, double limit,
           const std::string& extra = "") {
  const bool in_time = limit <= 0 || secs < limit;
  const bool pass = c.ok() && in_time;
  std::printf("%s criterion %d: %s (%zu checks, %.2f s%s)%s\n", pass ? "PASS" : "FAIL", id,
              name.c_str(), c.checks(), secs,
              limit > 0 ? (", limit " + std::to_string(static_cast<int>(limit)) + " s").c_str()
                        : "",
              extra.c_str());
  for (const auto& f : c.failures()) std::printf("    %s\n", f.c_str());
  if (c.failed() > c.failures().size()) {
    std::printf("    ... %zu more\n", c.failed() - c.failures().size());
  }
  if (!in_time) std::printf("    over the time limit\n");
  std::fflush(stdout);
  return pass ? 0 : 1;
}

StepResult fresh_step(const OptimizerConfig& c, std::vector<double> theta, std::vector<double> g) {
  return step(init_state(c, theta.size()), theta, g, c);
}

// ---------------------------------------------------------------------------

int criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  Checker c;
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_int_distribution<std::uint64_t> tdist(0, 200);

  for (OptimizerKind kind : kAllOptimizers) {
    const SpaceSpec space = search_space(kind, Regime::kFull);
    const std::string name(to_string(kind));
    for (int k = 0; k < 100; ++k) {
      OptimizerConfig cfg = default_config(kind);
      for (const ParamRange& p : space.params) {
        const double x = u(rng);
        const double v = p.scale == Scale::kLog
                             ? std::exp(std::log(p.low) + x * (std::log(p.high) - std::log(p.low)))
                             : p.low + x * (p.high - p.low);
        if (p.name == "epsilon") cfg.epsilon = v;
        if (p.name == "rho1") cfg.rho1 = v;
        if (p.name == "rho2") cfg.rho2 = v;
        if (p.name == "delta") cfg.delta = v;
        if (p.name == "alpha") cfg.alpha = v;
        if (p.name == "eps_star") cfg.eps_star = v;
        if (p.name == "gamma") cfg.gamma = v;
      }
      cfg.lambda = 0.001 + 0.1 * u(rng);

      constexpr std::size_t dim = 4;
      OptimizerState st = init_state(cfg, dim);
      st.t = tdist(rng);
      std::vector<double> theta(dim), g(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        theta[i] = n(rng);
        g[i] = n(rng) * std::pow(10.0, 3 * n(rng));
        if (st.t > 0) {
          st.s[i] = 0.3 * n(rng);
          st.r[i] = kind == OptimizerKind::kAdaMax ? std::fabs(n(rng)) : 0.1 * u(rng);
          st.v[i] = 1e-3 * n(rng);
        }
      }
      const StepResult got = step(st, theta, g, cfg);
      c.expect(got.state.t == st.t + 1, name + ": t incremented");
      for (std::size_t i = 0; i < dim; ++i) {
        reference::Scalar in{st.t, st.s[i], st.r[i], st.v[i], theta[i]};
        const reference::Scalar want = reference::step(kind, cfg, in, g[i]);
        const std::string at = name + " step " + std::to_string(k) + " coord " + std::to_string(i);
        c.near(got.theta[i], static_cast<double>(want.theta), 1e-9, at + " theta");
        if (kind != OptimizerKind::kSGD && kind != OptimizerKind::kSGDM) {
          c.near(got.state.s[i], static_cast<double>(want.s), 1e-9, at + " s");
          c.near(got.state.r[i], static_cast<double>(want.r), 1e-9, at + " r");
        }
        if (kind == OptimizerKind::kSGDM) {
          c.near(got.state.v[i], static_cast<double>(want.v), 1e-9, at + " v");
        }
      }
    }
  }

  // Hand-computed single steps, to six significant figures.
  auto sig6 = [&](double got, double want, const std::string& what) {
    std::ostringstream os;
    os.precision(10);
    os << what << ": got " << got << ", want " << want;
    c.expect(same_sig(got, want, 6), os.str());
  };
  OptimizerConfig sgd = default_config(OptimizerKind::kSGD);
  sgd.epsilon = 0.1;
  sig6(fresh_step(sgd, {1.0}, {0.5}).theta[0], 0.95, "SGD example");
  sig6(fresh_step(default_config(OptimizerKind::kSGD), {0.0}, {1.0}).theta[0], -0.001,
       "SGD default-rate example");

  OptimizerConfig sgdm = default_config(OptimizerKind::kSGDM);
  sgdm.epsilon = 0.1;
  sgdm.alpha = 0.9;
  const StepResult m1 = fresh_step(sgdm, {1.0}, {0.5});
  const StepResult m2 = step(m1.state, m1.theta, std::vector<double>{0.5}, sgdm);
  sig6(m1.theta[0], 0.95, "SGDM step 1 theta");
  sig6(m1.state.v[0], -0.05, "SGDM step 1 velocity");
  sig6(m2.theta[0], 0.855, "SGDM step 2 theta");
  sig6(m2.state.v[0], -0.095, "SGDM step 2 velocity");

  const OptimizerConfig adam = default_config(OptimizerKind::kAdam);
  const StepResult a1 = fresh_step(adam, {0.0}, {1.0});
  sig6(a1.state.s[0], 0.1, "Adam s'");
  sig6(a1.state.r[0], 0.001, "Adam r'");
  sig6(a1.theta[0], -9.99999990e-4, "Adam theta'");
  OptimizerConfig nadam = adam;
  nadam.kind = OptimizerKind::kNadam;
  sig6(fresh_step(nadam, {0.0}, {1.0}).theta[0], -1.47442e-3, "Nadam theta'");
  OptimizerConfig adamw = default_config(OptimizerKind::kAdamW);
  adamw.lambda = 0.01;
  sig6(fresh_step(adamw, {0.5}, {1.0}).theta[0], 0.494000, "AdamW theta'");

  const OptimizerConfig adamax = default_config(OptimizerKind::kAdaMax);
  const StepResult x1 = fresh_step(adamax, {0.0}, {1.0});
  sig6(x1.theta[0], -0.002, "AdaMax theta'");
  sig6(x1.state.r[0], 1.0, "AdaMax r'");
  sig6(step(x1.state, x1.theta, std::vector<double>{0.5}, adamax).state.r[0], 0.999,
       "AdaMax r after two steps");

  const OptimizerConfig ab = default_config(OptimizerKind::kAdaBound);
  sig6(adabound_bounds(1, ab).lo, 9.99001e-5, "AdaBound lo(1)");
  sig6(adabound_bounds(1, ab).hi, 100.1, "AdaBound hi(1)");
  sig6(adabound_bounds(1000, ab).lo, 0.05, "AdaBound lo(1000)");
  sig6(adabound_bounds(1000, ab).hi, 0.2, "AdaBound hi(1000)");
  sig6(fresh_step(ab, {0.0}, {1.0}).theta[0], -3.16227e-3, "AdaBound theta'");

  return report(1, "optimizer oracle suite", c, seconds_since(t0), 5.0);
}

// ---------------------------------------------------------------------------

int criterion_2() {
  const auto t0 = std::chrono::steady_clock::now();
  Checker c;
  std::mt19937_64 rng(202);
  std::normal_distribution<double> n(0.0, 1.0);

  {
    OptimizerConfig m = default_config(OptimizerKind::kSGDM);
    m.alpha = 0.0;
    const OptimizerConfig s = default_config(OptimizerKind::kSGD);
    std::vector<double> a{0.5, -1.0, 2.0}, b = a;
    OptimizerState sa = init_state(m, 3), sb = init_state(s, 3);
    bool same = true;
    for (int k = 0; k < 1000; ++k) {
      const std::vector<double> g{n(rng), n(rng), n(rng)};
      StepResult ra = step(sa, a, g, m), rb = step(sb, b, g, s);
      sa = std::move(ra.state);
      sb = std::move(rb.state);
      a = std::move(ra.theta);
      b = std::move(rb.theta);
      same = same && a == b;
    }
    c.expect(same, "SGDM(alpha=0) and SGD trajectories differ");
  }

  for (OptimizerKind kind : {OptimizerKind::kAdam, OptimizerKind::kAdamW}) {
    for (double gstar : {1.0, -0.37, 2.5e-3, 40.0}) {
      const OptimizerConfig cfg = default_config(kind);
      OptimizerState st = init_state(cfg, 1);
      std::vector<double> theta{0.0};
      for (std::uint64_t t = 1; t <= 100; ++t) {
        StepResult r = step(st, theta, std::vector<double>{gstar}, cfg);
        const double s_hat = r.state.s[0] / (1 - std::pow(cfg.rho1, static_cast<double>(t)));
        const double r_hat = r.state.r[0] / (1 - std::pow(cfg.rho2, static_cast<double>(t)));
        const std::string at = std::string(to_string(kind)) + " t=" + std::to_string(t);
        c.near(s_hat, gstar, 1e-12, at + " s_hat");
        c.near(r_hat, gstar * gstar, 1e-12, at + " r_hat");
        if (kind == OptimizerKind::kAdam) {
          c.near(theta[0] - r.theta[0], cfg.epsilon * gstar / (cfg.delta + std::fabs(gstar)), 1e-9,
                 at + " update");
        }
        st = std::move(r.state);
        theta = std::move(r.theta);
      }
    }
  }

  for (OptimizerKind kind : kAllOptimizers) {
    const OptimizerConfig cfg = default_config(kind);
    const std::vector<double> start{1.25, -0.5, 3.0};
    std::vector<double> theta = start;
    OptimizerState st = init_state(cfg, 3);
    for (int t = 1; t <= 100; ++t) {
      StepResult r = step(st, theta, std::vector<double>(3, 0.0), cfg);
      st = std::move(r.state);
      theta = std::move(r.theta);
      if (kind == OptimizerKind::kAdamW) {
        for (std::size_t i = 0; i < 3; ++i) {
          c.near(theta[i], start[i] * std::pow(1 - cfg.lambda, t), 1e-12,
                 "AdamW decay t=" + std::to_string(t));
        }
      }
    }
    if (kind != OptimizerKind::kAdamW) {
      c.expect(theta == start, std::string(to_string(kind)) + " moved under zero gradients");
    }
  }
  return report(2, "identity suite", c, seconds_since(t0), 0);
}

// ---------------------------------------------------------------------------

int criterion_3() {
  const auto t0 = std::chrono::steady_clock::now();
  Checker c;
  for (double es : {1e-2, 0.05, 0.1}) {
    for (double gamma : {1e-4, 1e-3, 2e-3}) {
      OptimizerConfig cfg = default_config(OptimizerKind::kAdaBound);
      cfg.eps_star = es;
      cfg.gamma = gamma;
      const std::string at = "eps*=" + std::to_string(es) + " gamma=" + std::to_string(gamma);
      LearningRateBounds prev = adabound_bounds(1, cfg);
      c.expect(prev.lo < es && es < prev.hi, at + ": lo(1) < eps* < hi(1)");
      // Dense early, then geometric up to ~1e12.
      std::uint64_t t = 2;
      while (t < 1'000'000'000'000ULL) {
        const LearningRateBounds b = adabound_bounds(t, cfg);
        c.expect(b.lo > prev.lo, at + ": lo not increasing at t=" + std::to_string(t));
        c.expect(b.hi < prev.hi, at + ": hi not decreasing at t=" + std::to_string(t));
        c.expect(b.lo < es && es < b.hi, at + ": eps* outside (lo, hi) at t=" + std::to_string(t));
        prev = b;
        t = t < 5000 ? t + 1 : t + t / 7;
      }
      const auto t_conv = static_cast<std::uint64_t>(std::floor(1e6 / gamma)) + 1;
      const LearningRateBounds b = adabound_bounds(t_conv, cfg);
      c.expect(std::fabs(b.lo - es) < 1e-6 * es, at + ": lo not converged");
      c.expect(std::fabs(b.hi - es) < 1e-6 * es, at + ": hi not converged");
    }
  }

  // Clipping saturation: the raw rate lands exactly on a bound.
  const OptimizerConfig base = default_config(OptimizerKind::kAdaBound);
  for (double g : {1.0, -3.0, 1e-4}) {
    OptimizerConfig high = base;
    high.epsilon = 1e9;
    const StepResult h = fresh_step(high, {0.25}, {g});
    c.expect(h.theta[0] == 0.25 - adabound_bounds(1, high).hi * h.state.s[0],
             "upper saturation not exact");
    OptimizerConfig low = base;
    low.epsilon = 1e-15;
    const StepResult l = fresh_step(low, {0.25}, {g});
    c.expect(l.theta[0] == 0.25 - adabound_bounds(1, low).lo * l.state.s[0],
             "lower saturation not exact");
  }
  // Late in training the bounds pinch around eps*, so the update is eps*·s'.
  OptimizerConfig late = base;
  late.epsilon = 1e-7;
  OptimizerState st = init_state(late, 1);
  st.t = 10'000'000'000'000'000'000ULL;
  const StepResult r = step(st, std::vector<double>{0.0}, std::vector<double>{1.0}, late);
  c.near(r.theta[0], -late.eps_star * r.state.s[0], 1e-12, "pinched bounds give eps*·s'");
  return report(3, "AdaBound bound suite", c, seconds_since(t0), 0);
}

// ---------------------------------------------------------------------------

int criterion_4() {
  const auto t0 = std::chrono::steady_clock::now();
  Checker c;
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::string summary;
  for (TaskName task : {TaskName::kColaLike, TaskName::kMrpcLike, TaskName::kStsbLike,
                        TaskName::kSst2Like, TaskName::kMnliLike}) {
    const TaskSpec spec = task_spec(task);
    const Dataset data = make_dataset(spec, 300, 9);
    std::uniform_int_distribution<std::size_t> pick(0, data.size() - 1);
    double worst = 0;
    for (int probe = 0; probe < 25; ++probe) {
      ModelParams p = init_params(spec, probe);
      for (const Segment& s : p.layout) {
        const bool input = s.name == "W" || s.name == "W1" || s.name == "w";
        for (std::size_t k = 0; k < s.rows * s.cols; ++k) {
          p.theta[s.offset + k] = u(rng) * (input ? 0.5 / spec.feature_scale : 0.5);
        }
      }
      std::vector<std::size_t> batch(1 + probe % 8);
      for (auto& i : batch) i = pick(rng);
      const LossGrad lg = loss_and_grad(p, data, batch);
      const double err =
          oracle::relative_error(lg.grad, oracle::finite_difference_grad(p, data, batch, 1e-6));
      worst = std::max(worst, err);
      c.expect(err < 1e-5, std::string(to_string(task)) + " probe " + std::to_string(probe) +
                               ": relative error " + std::to_string(err));
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, " %s/%s max %.1e", std::string(to_string(task)).c_str(),
                  std::string(to_string(spec.model)).c_str(), worst);
    summary += buf;
  }
  return report(4, "gradient checks", c, seconds_since(t0), 10.0, summary);
}

// ---------------------------------------------------------------------------

int criterion_5() {
  const auto t0 = std::chrono::steady_clock::now();
  Checker c;
  std::vector<int> p, g;
  std::size_t matrices = 0;
  for (int tp = 0; tp <= 5; ++tp)
    for (int tn = 0; tn <= 5; ++tn)
      for (int fp = 0; fp <= 5; ++fp)
        for (int fn = 0; fn <= 5; ++fn) {
          if (tp + tn + fp + fn == 0) continue;
          ++matrices;
          oracle::expand_confusion(tp, tn, fp, fn, p, g);
          const std::string at = "TP=" + std::to_string(tp) + " TN=" + std::to_string(tn) +
                                 " FP=" + std::to_string(fp) + " FN=" + std::to_string(fn);
          c.expect(std::fabs(matthews_corr(p, g) - oracle::mcc_by_correlation(p, g)) <= 1e-12,
                   at + ": MCC");
          c.expect(std::fabs(macro_f1(p, g, 2) - oracle::macro_f1_by_sets(p, g, 2)) <= 1e-12,
                   at + ": macro-F1");
        }

  oracle::expand_confusion(6, 3, 1, 2, p, g);
  c.near(macro_f1(p, g, 2), (0.8 + 2.0 / 3.0) / 2, 1e-15, "macro-F1 example");
  c.near(matthews_corr(p, g), 16.0 / std::sqrt(1120.0), 1e-15, "MCC example");
  c.near(pearson_corr(std::vector<double>{1, 2, 3}, std::vector<double>{2, 4, 5}),
         9.0 / std::sqrt(84.0), 1e-15, "Pearson example");
  std::vector<int> golds(70, 0);
  golds.insert(golds.end(), 30, 1);
  c.near(macro_f1(std::vector<int>(100, 0), golds, 2), 0.7 / 1.7, 1e-15, "all-zero macro-F1");
  c.expect(accuracy(std::vector<int>{0, 1, 1, 0}, std::vector<int>{0, 1, 0, 0}) == 0.75,
           "accuracy example");

  std::mt19937_64 rng(505);
  std::uniform_int_distribution<int> len(2, 50), bit(0, 1), cls(0, 2);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int it = 0; it < 1000; ++it) {
    const int m = len(rng);
    std::vector<int> bp(m), bg(m), cp(m), cg(m), pp(m), pg(m);
    std::vector<double> x(m), y(m), ax(m);
    const double a = (it % 2 ? -1 : 1) * std::exp(n(rng));
    const double b = 5 * n(rng);
    for (int i = 0; i < m; ++i) {
      bp[i] = bit(rng);
      bg[i] = bit(rng);
      cp[i] = cls(rng);
      cg[i] = cls(rng);
      pp[i] = (cp[i] + 1) % 3;
      pg[i] = (cg[i] + 1) % 3;
      x[i] = n(rng);
      y[i] = n(rng) + (it % 3) * x[i];
      ax[i] = a * x[i] + b;
    }
    const double mcc = matthews_corr(bp, bg);
    const double f1 = macro_f1(cp, cg, 3);
    const double acc = accuracy(cp, cg);
    const double r = pearson_corr(x, y);
    const std::string at = "random input " + std::to_string(it);
    c.expect(mcc >= -1 && mcc <= 1, at + ": MCC range");
    c.expect(f1 >= 0 && f1 <= 1, at + ": macro-F1 range");
    c.expect(acc >= 0 && acc <= 1, at + ": accuracy range");
    c.expect(r >= -1 && r <= 1, at + ": Pearson range");
    c.expect(std::fabs(matthews_corr(bg, bp) - mcc) <= 1e-12, at + ": MCC symmetry");
    c.expect(std::fabs(pearson_corr(y, x) - r) <= 1e-12, at + ": Pearson symmetry");
    c.expect(accuracy(pp, pg) == acc, at + ": accuracy permutation");
    c.expect(std::fabs(macro_f1(pp, pg, 3) - f1) <= 1e-12, at + ": macro-F1 permutation");
    c.expect(std::fabs(pearson_corr(ax, y) - std::copysign(1.0, a) * r) <= 1e-9,
             at + ": Pearson affine invariance");
  }
  return report(5, "metric oracle suite", c, seconds_since(t0), 0,
                " " + std::to_string(matrices) + " confusion matrices");
}

// ---------------------------------------------------------------------------

struct ProtocolRun {
  std::vector<ExperimentResult> results;
  std::string results_csv;
  std::string report_text;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ProtocolRun run_protocol(const fs::path& dir, std::uint64_t seed) {
  ProtocolRun out;
  for (TaskName task : {TaskName::kColaLike, TaskName::kStsbLike}) {
    for (OptimizerKind kind : kAllOptimizers) {
      for (Regime regime : {Regime::kDefaults, Regime::kLrOnly, Regime::kFull}) {
        RunSpec run;
        run.task = task_spec(task);
        run.optimizer = kind;
        run.regime = regime;
        run.master_seed = seed;
        out.results.push_back(run_experiment(run));
      }
    }
  }
  fs::remove_all(dir);
  std::vector<std::string> warnings;
  write_run_outputs(out.results, dir, &warnings);
  out.results_csv = slurp(dir / "results.csv");
  out.report_text = slurp(dir / "report.txt");
  return out;
}

constexpr std::uint64_t kMasterSeed = 0;

int criterion_6_7(const fs::path& work) {
  const auto t0 = std::chrono::steady_clock::now();
  Checker c6;
  const ProtocolRun first = run_protocol(work / "run_a", kMasterSeed);
  const ProtocolRun second = run_protocol(work / "run_b", kMasterSeed);
  const double secs = seconds_since(t0);

  // (a) every table cell reads "mean (std)" with two decimals.
  const std::regex cell(R"((-?\d+\.\d{2}) \((\d+\.\d{2})\)( \*)?)");
  std::size_t cells = 0;
  for (const ExperimentResult& r : first.results) {
    const std::string text = format_cell(r.metric, r.mean, r.std);
    c6.expect(std::regex_match(text, cell), "bad cell '" + text + "'");
    c6.expect(first.report_text.find(text) != std::string::npos,
              "cell '" + text + "' missing from report.txt");
    ++cells;
  }
  c6.expect(cells == 2 * 7 * 3, "expected 42 cells");
  c6.expect(first.report_text.find("regime: defaults") != std::string::npos &&
                first.report_text.find("regime: lr-only") != std::string::npos &&
                first.report_text.find("regime: full") != std::string::npos,
            "report lacks a table per regime");

  // (b) tuned learning rates stay in range, (c) defaults are verbatim.
  std::size_t tuned = 0;
  for (const ExperimentResult& r : first.results) {
    c6.expect(r.splits.size() == 5, "expected five splits");
    for (const SplitResult& s : r.splits) {
      const std::string at = std::string(to_string(r.task)) + "/" +
                             std::string(to_string(r.optimizer)) + "/" +
                             std::string(to_string(r.regime)) + " split " +
                             std::to_string(s.split);
      if (r.regime == Regime::kDefaults) {
        c6.expect(s.study.trials.size() == 1, at + ": defaults ran more than one trial");
        c6.expect(s.config == default_config(r.optimizer), at + ": defaults config altered");
        const double want = (r.optimizer == OptimizerKind::kNadam ||
                             r.optimizer == OptimizerKind::kAdaMax)
                                ? 2e-3
                                : 1e-3;
        c6.expect(s.config.epsilon == want, at + ": default learning rate");
        continue;
      }
      c6.expect(s.study.trials.size() == kMaxTrials, at + ": expected 30 trials");
      const double hi = is_adaptive(r.optimizer) ? 1e-5 : 1e-3;
      for (const TrialRecord& t : s.study.trials) {
        ++tuned;
        c6.expect(t.config.epsilon >= 1e-7 && t.config.epsilon <= hi,
                  at + ": tuned epsilon " + std::to_string(t.config.epsilon));
      }
    }
  }

  // (d) identical results.csv from two runs with the same seed.
  c6.expect(!first.results_csv.empty(), "results.csv empty");
  c6.expect(first.results_csv == second.results_csv, "results.csv differs between runs");
  c6.expect(first.report_text == second.report_text, "report.txt differs between runs");

  const int failed6 = report(6, "protocol replication", c6, secs, 600.0,
                             " " + std::to_string(tuned) + " tuned trials checked");

  // Criterion 7 reuses the first run.
  Checker c7;
  double defaults_mcc = std::numeric_limits<double>::quiet_NaN();
  double lr_mcc = defaults_mcc;
  for (const ExperimentResult& r : first.results) {
    if (r.task == TaskName::kColaLike && r.optimizer == OptimizerKind::kAdam) {
      if (r.regime == Regime::kDefaults) defaults_mcc = r.mean;
      if (r.regime == Regime::kLrOnly) lr_mcc = r.mean;
    }
    for (const SplitResult& s : r.splits) {
      const std::vector<double> running = best_so_far(s.study);
      for (std::size_t i = 1; i < running.size(); ++i) {
        c7.expect(running[i] >= running[i - 1], "best-so-far decreased");
      }
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, " cola_like Adam MCC lr-only %.4f vs defaults %.4f", lr_mcc,
                defaults_mcc);
  c7.expect(lr_mcc >= defaults_mcc, std::string("tuned Adam below defaults:") + buf);
  const int failed7 = report(7, "qualitative sanity", c7, 0.0, 0, buf);

  std::fputs("\n", stdout);
  std::fputs(first.report_text.c_str(), stdout);
  return failed6 + failed7;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path work = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "optbench_acceptance";
  int failed = 0;
  const std::vector<std::function<int()>> quick = {criterion_1, criterion_2, criterion_3,
                                                   criterion_4, criterion_5};
  for (const auto& run : quick) {
    try {
      failed += run();
    } catch (const std::exception& e) {
      std::printf("FAIL criterion: unexpected exception: %s\n", e.what());
      ++failed;
    }
  }
  try {
    failed += criterion_6_7(work);
  } catch (const std::exception& e) {
    std::printf("FAIL criterion 6: unexpected exception: %s\n", e.what());
    std::printf("FAIL criterion 7: not evaluated\n");
    failed += 2;
  }
  std::printf("%d criterion(s) failed\n", failed);
  return failed == 0 ? 0 : 1;
}
