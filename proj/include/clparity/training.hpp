// Copyright 2026 The clparity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// SGD with per-group coefficients, noisy gradient descent, the curriculum
// training loop, and the two-phase layer-wise protocols.

#ifndef CLPARITY_TRAINING_HPP_
#define CLPARITY_TRAINING_HPP_

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "clparity/boolean_data.hpp"
#include "clparity/curriculum.hpp"
#include "clparity/evaluation.hpp"
#include "clparity/gradients.hpp"
#include "clparity/losses.hpp"
#include "clparity/network.hpp"
#include "clparity/rng.hpp"

namespace clparity {

// A coefficient that takes one value at update 0 and another afterwards.
// Every schedule in use is of this form.
struct Coefficient {
  double first = 0.0;
  double rest = 0.0;

  static Coefficient constant(double v) { return {v, v}; }
  double at(std::int64_t t) const { return t == 0 ? first : rest; }
};

// Sign in front of psi_t * G_b in the bias update
//   b' = lambda_t * (b (+|-) psi_t * G_b) + shift_t.
// kPlus reproduces the layer-wise hinge construction; plain descent is kMinus.
enum class BiasSign { kPlus, kMinus };

// Update rule, indexed by the 0-based update number t:
//   w' = w - gamma_t G_w
//   a' = a - xi_t G_a + c_t
//   b' = lambda_t (b -/+ psi_t G_b) + shift_t
struct ScheduleSpec {
  Coefficient gamma;
  Coefficient xi;
  Coefficient psi;
  Coefficient c;
  Coefficient lambda = Coefficient::constant(1.0);
  Coefficient shift;
  BiasSign bias_sign = BiasSign::kMinus;

  static ScheduleSpec plain(double lr) {
    ScheduleSpec s;
    s.gamma = s.xi = s.psi = Coefficient::constant(lr);
    return s;
  }
};

inline NetworkParams apply_update(const NetworkParams& p, const ParamGrad& g,
                                  const ScheduleSpec& s, std::int64_t t) {
  NetworkParams out = p;
  out.w -= s.gamma.at(t) * g.w;
  out.a = p.a - s.xi.at(t) * g.a;
  out.a.array() += s.c.at(t);
  const double sign = s.bias_sign == BiasSign::kPlus ? 1.0 : -1.0;
  out.b = s.lambda.at(t) * (p.b + sign * s.psi.at(t) * g.b);
  out.b.array() += s.shift.at(t);
  return out;
}

inline NetworkParams sgd_step(const NetworkParams& p, const LabeledBatch& batch,
                              LossKind loss, const ScheduleSpec& schedule,
                              std::int64_t t, const CovSettings& cov = {},
                              std::optional<double> label_mean = {}) {
  return apply_update(p, batch_gradient(p, batch, loss, cov, label_mean).grad,
                      schedule, t);
}

// ---------------------------------------------------------------------------
// Noisy gradient descent: theta' = theta - lr ([E grad]_A + Z), Z ~ N(0, tau^2)
// i.i.d. per coordinate and step.

enum class GradientMode { kPopulationExact, kPopulationMc };

struct NoisyGDConfig {
  double gradient_range = 1.0;  // A
  double noise_std = 0.0;       // tau
  double lr = 0.1;
  GradientMode mode = GradientMode::kPopulationExact;
  Eigen::Index batch = 1024;  // kPopulationMc only
};

struct NoisyStepStats {
  double loss = 0.0;
  double error = 0.0;
  // Uniform error of the pre-update parameters; exact mode only.
  std::optional<double> uniform_error;
};

// Clamps each coordinate to [-A, A], then adds noise in the order a, w
// (row-major), b.
inline void clamp_and_perturb(ParamGrad& g, double range, double tau, Rng& rng) {
  auto apply = [&](auto& m) {
    if constexpr (std::is_same_v<std::decay_t<decltype(m)>, Eigen::MatrixXd>) {
      for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
          m(i, j) = std::clamp(m(i, j), -range, range);
          if (tau > 0.0) m(i, j) += tau * rng.normal();
        }
    } else {
      for (Eigen::Index i = 0; i < m.size(); ++i) {
        m(i) = std::clamp(m(i), -range, range);
        if (tau > 0.0) m(i) += tau * rng.normal();
      }
    }
  };
  apply(g.a);
  apply(g.w);
  apply(g.b);
}

inline NetworkParams noisy_gd_step(const NetworkParams& p,
                                   const TargetFunction& target,
                                   const ProductMeasure& m,
                                   const NoisyGDConfig& cfg, LossKind loss,
                                   std::int64_t /*t*/, Rng& rng,
                                   NoisyStepStats* stats = nullptr) {
  if (!(cfg.gradient_range > 0.0) || cfg.noise_std < 0.0) {
    throw std::invalid_argument("noisy_gd_step: need A > 0 and tau >= 0");
  }
  ParamGrad g;
  if (cfg.mode == GradientMode::kPopulationExact) {
    PopulationResult r = population_gradient(p, target, m, loss);
    if (stats) *stats = {r.loss, r.error, r.uniform_error};
    g = std::move(r.grad);
  } else {
    const LabeledBatch batch = sample_batch(m, target, cfg.batch, rng);
    GradientResult r = batch_gradient(p, batch, loss);
    if (stats) *stats = {r.loss, r.error, std::nullopt};
    g = std::move(r.grad);
  }
  clamp_and_perturb(g, cfg.gradient_range, cfg.noise_std, rng);
  NetworkParams out = p;
  out.a -= cfg.lr * g.a;
  out.w -= cfg.lr * g.w;
  out.b -= cfg.lr * g.b;
  return out;
}

// ---------------------------------------------------------------------------
// Training loop.

enum class OptimizerKind { kSgd, kNoisyGd };

struct TrainConfig {
  int d = 0;
  int k = 0;
  int hidden = 0;
  InitSpec init;
  std::optional<TargetFunction> target;
  CurriculumSpec curriculum = CurriculumSpec::none();
  LossKind loss = LossKind::kSquare;
  CovSettings cov;
  OptimizerKind optimizer = OptimizerKind::kSgd;
  ScheduleSpec schedule = ScheduleSpec::plain(0.01);
  NoisyGDConfig noisy;
  Eigen::Index batch = 1024;
  std::int64_t steps = 0;
  std::int64_t eval_every = 100;
  // Uniform test set: > 0 draws that many points once; 0 disables.
  std::int64_t test_samples = 4096;
  // Evaluate the uniform test error by enumerating the cube instead.
  bool exact_test = false;
  double convergence_threshold = 0.01;
  // r-CL phases end at the first step whose batch error is below the
  // threshold instead of at fixed boundaries.
  bool advance_on_convergence = false;
  // Stop once the last phase has converged.
  bool stop_on_convergence = false;
  // Stop at the first logged uniform test error <= this (disabled if < 0).
  double stop_test_error = -1.0;
  bool record_timing = false;
};

struct LogRow {
  std::int64_t step = 0;
  double bias = 0.5;
  double train_loss = std::numeric_limits<double>::quiet_NaN();
  double train_err = std::numeric_limits<double>::quiet_NaN();
  double test_err = std::numeric_limits<double>::quiet_NaN();
  double elapsed_ms = std::numeric_limits<double>::quiet_NaN();
};

struct RunRecord {
  std::vector<LogRow> rows;
  NetworkParams final_params;
  nlohmann::json config;
  std::uint64_t seed = 0;
  std::int64_t steps_run = 0;
  // Step at which each phase met the convergence threshold; -1 if never.
  std::vector<std::int64_t> phase_steps;
  // Step at which the final phase converged (T1 + T2 for two phases).
  std::optional<std::int64_t> convergence_step;
  double final_test_error = std::numeric_limits<double>::quiet_NaN();
};

nlohmann::json to_json(const TrainConfig& c);

namespace detail {

class Stopwatch {
 public:
  explicit Stopwatch(bool on)
      : on_(on), start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    if (!on_) return std::numeric_limits<double>::quiet_NaN();
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  bool on_;
  std::chrono::steady_clock::time_point start_;
};

// Uniform test error: on a fixed sampled set, or exactly.
class TestSet {
 public:
  TestSet(const TrainConfig& c, Rng& rng) : target_(*c.target), exact_(c.exact_test) {
    if (!exact_ && c.test_samples > 0) {
      batch_ = sample_batch(ProductMeasure::uniform(c.d), target_,
                            c.test_samples, rng);
      x_ = batch_->inputs.cast<double>();
    }
  }

  double error(const NetworkParams& p) const {
    if (exact_) {
      Rng unused(0);
      return generalization_error(p, target_, ErrorMode::classification(),
                                  Sampling::exhaustive(), unused);
    }
    if (!batch_) return std::numeric_limits<double>::quiet_NaN();
    const Eigen::VectorXd pred = forward_batch(p, x_);
    double miss = 0.0;
    for (Eigen::Index i = 0; i < pred.size(); ++i) {
      miss += sign_output(pred(i)) != batch_->labels(i) ? 1.0 : 0.0;
    }
    return miss / static_cast<double>(pred.size());
  }

 private:
  const TargetFunction& target_;
  bool exact_;
  std::optional<LabeledBatch> batch_;
  Eigen::MatrixXd x_;
};

inline void validate(const TrainConfig& c) {
  if (!c.target) throw std::invalid_argument("train: target is required");
  if (c.d < 1 || c.hidden < 1) {
    throw std::invalid_argument("train: need d >= 1 and hidden >= 1");
  }
  if (c.target->dim() != c.d) throw DimensionMismatch("train: target dim != d");
  if (c.steps < 0 || c.batch < 1 || c.eval_every < 1) {
    throw std::invalid_argument("train: need steps >= 0, batch >= 1, "
                                "eval_every >= 1");
  }
  if (c.advance_on_convergence && c.curriculum.kind() == CurriculumSpec::Kind::kCcl) {
    throw std::invalid_argument("train: convergence-driven phases need r-CL");
  }
  if (!c.advance_on_convergence && c.steps > 0) c.curriculum.check_horizon(c.steps);
}

}  // namespace detail

// Online training: every step draws a fresh batch from the current
// curriculum measure. Row semantics: train_loss/train_err are measured on the
// step's batch before the update, test_err on the parameters after it.
inline RunRecord train(const TrainConfig& c, std::uint64_t seed) {
  detail::validate(c);
  Rng rng(seed);
  RunRecord rec;
  rec.seed = seed;
  rec.config = to_json(c);
  const detail::Stopwatch clock(c.record_timing);
  NetworkParams params = init(c.init, c.hidden, c.d, c.k, rng);
  const detail::TestSet test(c, rng);
  const TargetFunction& target = *c.target;

  const bool adaptive = c.advance_on_convergence &&
                        c.curriculum.kind() == CurriculumSpec::Kind::kRcl;
  const int phases = adaptive ? c.curriculum.phases()
                              : (c.curriculum.kind() == CurriculumSpec::Kind::kRcl
                                     ? c.curriculum.phases()
                                     : 1);
  rec.phase_steps.assign(static_cast<std::size_t>(phases), -1);

  auto phase_of = [&](std::int64_t t) -> int {
    if (c.curriculum.kind() != CurriculumSpec::Kind::kRcl) return 0;
    int j = 0;
    const auto& bnd = c.curriculum.boundaries();
    while (j < static_cast<int>(bnd.size()) && t > bnd[static_cast<std::size_t>(j)]) ++j;
    return j;
  };

  int phase = 0;
  auto bias_for = [&](std::int64_t t) {
    if (adaptive) return c.curriculum.phase_bias(phase);
    return c.curriculum.bias_at(t, std::max<std::int64_t>(c.steps, 1));
  };

  // With exact population gradients every sweep also yields the uniform
  // error of the parameters it was run at, which are the post-update
  // parameters of the previous step. Rows then take their test error from the
  // next sweep instead of a separate evaluation.
  const bool sweep_test = c.exact_test && c.optimizer == OptimizerKind::kNoisyGd &&
                          c.noisy.mode == GradientMode::kPopulationExact;
  std::optional<std::size_t> pending;
  auto test_error = [&](const NetworkParams& p) {
    if (sweep_test) {
      pending = rec.rows.size();
      return std::numeric_limits<double>::quiet_NaN();
    }
    return test.error(p);
  };

  {
    LogRow row;
    row.bias = c.steps > 0 ? bias_for(1) : c.curriculum.phase_bias(0);
    row.test_err = test_error(params);
    row.elapsed_ms = clock.ms();
    rec.rows.push_back(row);
  }

  std::optional<double> label_mean;
  int label_mean_phase = -1;
  for (std::int64_t t = 1; t <= c.steps; ++t) {
    if (!adaptive) phase = phase_of(t);
    const double bias = bias_for(t);
    const ProductMeasure measure(bias, c.d);
    double train_loss = 0.0, train_err = 0.0;
    if (c.optimizer == OptimizerKind::kSgd) {
      const LabeledBatch batch = sample_batch(measure, target, c.batch, rng);
      if (c.loss == LossKind::kCovariance) {
        const bool refresh = c.cov.label_mean == LabelMeanRefresh::kPerStep ||
                             c.curriculum.kind() == CurriculumSpec::Kind::kCcl ||
                             phase != label_mean_phase;
        if (refresh) {
          const Eigen::Index n = c.cov.estimation == CovEstimation::kSplitBatch
                                     ? batch.size() / 2
                                     : batch.size();
          label_mean = batch.labels.head(n).mean();
          label_mean_phase = phase;
        }
      }
      const GradientResult g = batch_gradient(params, batch, c.loss, c.cov, label_mean);
      train_loss = g.loss;
      train_err = g.error;
      params = apply_update(params, g.grad, c.schedule, t - 1);
    } else {
      NoisyStepStats stats;
      params = noisy_gd_step(params, target, measure, c.noisy, c.loss, t - 1,
                             rng, &stats);
      train_loss = stats.loss;
      train_err = stats.error;
      if (pending && stats.uniform_error) {
        rec.rows[*pending].test_err = *stats.uniform_error;
        pending.reset();
      }
    }
    rec.steps_run = t;

    bool stop = false;
    const bool below = train_err < c.convergence_threshold;
    if (below && rec.phase_steps[static_cast<std::size_t>(phase)] < 0) {
      rec.phase_steps[static_cast<std::size_t>(phase)] = t;
      if (phase == phases - 1) {
        rec.convergence_step = t;
        stop = c.stop_on_convergence;
      }
    }
    if (adaptive && below && phase < phases - 1) ++phase;

    if (t % c.eval_every == 0 || t == c.steps || stop) {
      LogRow row{t, bias, train_loss, train_err, test_error(params), clock.ms()};
      rec.rows.push_back(row);
      if (c.stop_test_error >= 0.0 && row.test_err <= c.stop_test_error) stop = true;
    }
    if (stop) break;
  }
  if (pending) {
    rec.rows[*pending].test_err =
        population_gradient(params, target, ProductMeasure::uniform(c.d), c.loss)
            .uniform_error;
  }
  rec.final_params = params;
  rec.final_test_error = rec.rows.back().test_err;
  return rec;
}

// ---------------------------------------------------------------------------
// Two-phase layer-wise protocols: one first-layer step under a biased
// measure, then second-layer-only training under the uniform measure.

enum class TheoremVariant { kHingeA, kCovB };

struct TheoremOverrides {
  int hidden = 0;                   // 0: from the coverage bound
  Eigen::Index batch = 0;           // 0: exact (weighted enumeration)
  std::int64_t phase2_steps = -1;   // < 0: prescribed T
  double p1 = 0.0;                  // 0: variant default
  double phase2_lr = 0.0;           // 0: prescribed xi_t
  std::int64_t eval_every = 1;
  HingeBiasScaling hinge_scaling = HingeBiasScaling::kActiveRange;
};

struct TheoremRun {
  RunRecord record;
  NetworkParams after_phase1;
  double p1 = 0.0;
  double mu = 0.0;
  int hidden = 0;
  // min over phase-2 iterates of the uniform loss, and the running average.
  double best_uniform_loss = std::numeric_limits<double>::infinity();
  std::vector<double> uniform_losses;
  bool learned = false;  // best_uniform_loss <= eps
};

inline double hinge_theorem_mu(int d, int k) {
  return std::sqrt(1.0 - 1.0 / (2.0 * (d - k)));
}

inline int hinge_theorem_hidden(int d, int k, double delta) {
  const double grid = (d + 1.0) * (d - k + 2.0);
  return static_cast<int>(std::ceil(grid * std::log(grid / delta)));
}

inline int cov_theorem_hidden(int k, double delta) {
  return static_cast<int>(std::ceil((k + 1.0) * std::log((k + 1.0) / delta)));
}

inline ScheduleSpec hinge_theorem_schedule(int d, int k, int N, double eps,
                                           double mu, HingeBiasScaling scaling) {
  ScheduleSpec s;
  s.gamma = {2.0 * N / std::pow(mu, k - 1), 0.0};
  s.xi = {0.0, eps / (2.0 * N)};
  s.psi = {N / std::pow(mu, k), 0.0};
  s.c = {-1.0 / (2.0 * N), 0.0};
  s.lambda = {hinge_bias_scale(d, scaling), 1.0};
  s.shift = {0.0, 0.0};
  s.bias_sign = BiasSign::kPlus;
  return s;
}

// c_0 = -1/(16N) zeroes the output layer after the first step, as the
// phase-2 convergence argument starts from a = 0.
inline ScheduleSpec cov_theorem_schedule(int k, int N, double eps, double mu) {
  ScheduleSpec s;
  const double gap = std::pow(mu, k - 1) - std::pow(mu, k + 1);
  s.gamma = {16.0 * N / (gap * k), 0.0};
  s.xi = {0.0, eps / (8.0 * N)};
  s.psi = {0.0, 0.0};
  s.c = {-1.0 / (16.0 * N), 0.0};
  s.lambda = {1.0, 1.0};
  s.shift = {-1.0, 0.0};
  return s;
}

inline std::int64_t hinge_theorem_steps(int d, int k, int N, double eps) {
  return static_cast<std::int64_t>(
      std::ceil(64.0 / (eps * eps) * std::pow(d - k + 1.0, 3) * (d + 1.0) * N));
}

inline std::int64_t cov_theorem_steps(int k, int N, double eps) {
  return static_cast<std::int64_t>(
      std::ceil(64.0 * std::pow(k, 3) * N / (eps * eps)));
}

inline TheoremRun train_layerwise_theorem(TheoremVariant variant, int d, int k,
                                          double eps, double delta,
                                          const TheoremOverrides& ov,
                                          std::uint64_t seed) {
  const bool hinge = variant == TheoremVariant::kHingeA;
  if (hinge) {
    check_hinge_hypotheses(d, k);
  } else {
    check_cov_hypotheses(d, k);
  }
  if (!(eps > 0.0) || !(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("train_layerwise_theorem: need eps > 0, "
                                "delta in (0,1)");
  }
  Rng rng(seed);
  TheoremRun run;
  run.hidden = ov.hidden > 0 ? ov.hidden
                             : (hinge ? hinge_theorem_hidden(d, k, delta)
                                      : cov_theorem_hidden(k, delta));
  if (hinge) {
    run.mu = hinge_theorem_mu(d, k);
    run.p1 = (run.mu + 1.0) / 2.0;
    if (ov.p1 > 0.0) {
      run.p1 = ov.p1;
      run.mu = 2.0 * ov.p1 - 1.0;
    }
  } else {
    run.p1 = ov.p1 > 0.0 ? ov.p1 : 1.0 - 1.0 / (2.0 * k);
    run.mu = 2.0 * run.p1 - 1.0;
  }
  const int N = run.hidden;
  const LossKind loss = hinge ? LossKind::kHinge : LossKind::kCovariance;
  InitSpec ispec;
  ispec.scheme = hinge ? InitScheme::kHingeTheory : InitScheme::kCovTheory;
  ispec.hinge_scaling = ov.hinge_scaling;
  ScheduleSpec schedule = hinge ? hinge_theorem_schedule(d, k, N, eps, run.mu,
                                                         ov.hinge_scaling)
                                : cov_theorem_schedule(k, N, eps, run.mu);
  if (ov.phase2_lr > 0.0) schedule.xi.rest = ov.phase2_lr;
  const std::int64_t T2 = ov.phase2_steps >= 0
                              ? ov.phase2_steps
                              : (hinge ? hinge_theorem_steps(d, k, N, eps)
                                       : cov_theorem_steps(k, N, eps));

  const TargetFunction target(ParitySupport::prefix(d, k));
  NetworkParams params = init(ispec, N, d, k, rng);

  TrainConfig echo;
  echo.d = d;
  echo.k = k;
  echo.hidden = N;
  echo.init = ispec;
  echo.target = target;
  echo.curriculum = CurriculumSpec::r_cl({1}, {run.p1, 0.5});
  echo.loss = loss;
  echo.schedule = schedule;
  echo.batch = ov.batch;
  echo.steps = T2 + 1;
  run.record.config = to_json(echo);
  run.record.config["protocol"] = hinge ? "hinge_a" : "cov_b";
  run.record.config["eps"] = eps;
  run.record.config["delta"] = delta;
  run.record.seed = seed;

  // Phase 1.
  const ProductMeasure biased(run.p1, d);
  const LabeledBatch batch1 = ov.batch == 0 ? exhaustive_batch(biased, target)
                                            : sample_batch(biased, target, ov.batch, rng);
  const GradientResult g1 = batch_gradient(params, batch1, loss);
  params = apply_update(params, g1.grad, schedule, 0);
  run.after_phase1 = params;
  run.record.rows.push_back({1, run.p1, g1.loss, g1.error});
  run.record.phase_steps = {1, -1};

  // Phase 2: only a moves (gamma = psi = 0, lambda = 1 for t >= 1).
  const ProductMeasure uniform = ProductMeasure::uniform(d);
  const bool exact_eval = d <= kMaxMaterializedDim;
  Rng eval_rng(Rng::derive_seed(seed, 1));
  auto uniform_loss = [&](const NetworkParams& p) {
    if (exact_eval) return population_gradient(p, target, uniform, loss).loss;
    Rng r = eval_rng;
    return generalization_error(p, target, ErrorMode::of_loss(loss),
                                Sampling::monte_carlo(16384), r);
  };
  for (std::int64_t t = 1; t <= T2; ++t) {
    ParamGrad g;
    double current = 0.0;
    double err = 0.0;
    if (ov.batch == 0) {
      PopulationResult r = population_gradient(params, target, uniform, loss);
      current = r.loss;
      err = r.error;
      g = std::move(r.grad);
    } else {
      const LabeledBatch b = sample_batch(uniform, target, ov.batch, rng);
      GradientResult r = batch_gradient(params, b, loss);
      current = (t % ov.eval_every == 0 || t == 1) ? uniform_loss(params)
                                                    : std::numeric_limits<double>::quiet_NaN();
      err = r.error;
      g = std::move(r.grad);
    }
    if (!std::isnan(current)) {
      run.uniform_losses.push_back(current);
      run.best_uniform_loss = std::min(run.best_uniform_loss, current);
    }
    if (t % ov.eval_every == 0 || t == 1) {
      run.record.rows.push_back({t + 1, 0.5, current, err});
    }
    params = apply_update(params, g, schedule, t);
  }
  const double last = uniform_loss(params);
  run.uniform_losses.push_back(last);
  run.best_uniform_loss = std::min(run.best_uniform_loss, last);
  run.record.rows.push_back({T2 + 1, 0.5, last});
  run.record.steps_run = T2 + 1;
  run.record.final_params = params;
  run.learned = run.best_uniform_loss <= eps;
  if (run.learned) run.record.convergence_step = T2 + 1;
  return run;
}

// ---------------------------------------------------------------------------
// Config echo.

inline nlohmann::json to_json(const ScheduleSpec& s) {
  auto coef = [](const Coefficient& c) { return nlohmann::json{c.first, c.rest}; };
  return {{"gamma", coef(s.gamma)}, {"xi", coef(s.xi)},
          {"psi", coef(s.psi)},     {"c", coef(s.c)},
          {"lambda", coef(s.lambda)}, {"shift", coef(s.shift)},
          {"bias_sign", s.bias_sign == BiasSign::kPlus ? "+" : "-"}};
}

inline nlohmann::json to_json(const TrainConfig& c) {
  nlohmann::json j;
  j["d"] = c.d;
  j["k"] = c.k;
  j["hidden"] = c.hidden;
  j["init"] = {{"scheme", init_scheme_name(c.init.scheme)},
               {"activation", activation_name(c.init.activation)},
               {"scale", c.init.scale},
               {"output_scale", c.init.output_scale}};
  if (c.target) j["target"] = to_json(*c.target);
  j["curriculum"] = to_json(c.curriculum);
  if (c.advance_on_convergence) j["curriculum"]["advance"] = "convergence";
  j["loss"] = loss_name(c.loss);
  if (c.loss == LossKind::kCovariance) {
    j["covariance"] = {
        {"estimation", c.cov.estimation == CovEstimation::kWholeBatch ? "whole_batch"
                                                                      : "split_batch"},
        {"label_mean", c.cov.label_mean == LabelMeanRefresh::kPerPhase ? "per_phase"
                                                                       : "per_step"}};
  }
  if (c.optimizer == OptimizerKind::kSgd) {
    j["optimizer"] = {{"kind", "sgd"}, {"schedule", to_json(c.schedule)}};
  } else {
    j["optimizer"] = {
        {"kind", "noisy_gd"},
        {"lr", c.noisy.lr},
        {"gradient_range", c.noisy.gradient_range},
        {"noise_std", c.noisy.noise_std},
        {"gradient_mode",
         c.noisy.mode == GradientMode::kPopulationExact ? "exact" : "mc"},
        {"batch", c.noisy.batch}};
  }
  j["batch"] = c.batch;
  j["steps"] = c.steps;
  j["eval_every"] = c.eval_every;
  j["test_samples"] = c.test_samples;
  j["exact_test"] = c.exact_test;
  j["convergence_threshold"] = c.convergence_threshold;
  j["stop_on_convergence"] = c.stop_on_convergence;
  j["stop_test_error"] = c.stop_test_error;
  return j;
}

}  // namespace clparity

#endif  // CLPARITY_TRAINING_HPP_
