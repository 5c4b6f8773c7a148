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

// Brute-force checks of the closed forms behind the layer-wise constructions.
// Enumeration is always the reference; closed forms are compared against it.

#ifndef CLPARITY_THEORY_VERIFY_HPP_
#define CLPARITY_THEORY_VERIFY_HPP_

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "clparity/boolean_data.hpp"
#include "clparity/gradients.hpp"
#include "clparity/losses.hpp"
#include "clparity/network.hpp"
#include "clparity/rng.hpp"
#include "clparity/training.hpp"

namespace clparity {

struct Report {
  std::string check;
  nlohmann::json params;
  double metric = 0.0;
  double bound = 0.0;
  bool pass = false;
  nlohmann::json details = nlohmann::json::object();
};

inline nlohmann::json to_json(const Report& r) {
  nlohmann::json j = {{"check", r.check}, {"params", r.params},
                      {"metric", r.metric}, {"bound", r.bound},
                      {"pass", r.pass}};
  if (!r.details.empty()) j["details"] = r.details;
  return j;
}

// Coefficient tables for the ramp span. kPrinted is the table exactly as
// stated (a*_{lm} = (-1)^l (-1)^m c_m (d-k), c = 2, 4, ..., 4, 3, 1). It misses
// inputs whose off-support coordinates are all -1: there the top unit of row
// l = t saturates at 1 instead of (d-k+1)/(d-k). kCorrected keeps the telescoping
// structure but makes every partial row sum R_t = sum_{l>t} A_l equal (-1)^t;
// with n = d-k, row l < d is
//   (-1)^l (-(2n+2), 4n, -4n, ..., 4n, -2n, 0)   for m = -1, 0, ..., n
// and row d is (-(n+1), n, 0, ..., 0).
enum class SpanTableA { kPrinted, kCorrected };

// chi_[k] as a combination of the (d+1)(d-k+2) ramp units
//   sigma_lm(x) = Ramp(sum_j x_j - 1/(2(d-k)) sum_{j>=k} x_j + b_lm)
// with b_lm = -d + 2l - 1/2 + (m+1)/(d-k).
class SpanConstructionA {
 public:
  SpanConstructionA(int d, int k, SpanTableA table = SpanTableA::kCorrected)
      : d_(d), k_(k), table_(table) {
    check_hinge_hypotheses(d, k);
  }

  int d() const { return d_; }
  int k() const { return k_; }

  double coefficient(int l, int m) const {
    const double n = d_ - k_;
    const double sl = (l % 2 == 0) ? 1.0 : -1.0;
    const double sm = (std::abs(m) % 2 == 0) ? 1.0 : -1.0;
    if (table_ == SpanTableA::kPrinted) {
      if (m == -1) return sl * sm * 2.0 * n;
      if (m <= d_ - k_ - 2) return sl * sm * 4.0 * n;
      if (m == d_ - k_ - 1) return sl * sm * 3.0 * n;
      return sl * sm * n;
    }
    if (l == d_) {
      if (m == -1) return -(n + 1.0);
      return m == 0 ? n : 0.0;
    }
    if (m == -1) return -sl * (2.0 * n + 2.0);
    if (m <= d_ - k_ - 2) return sl * sm * 4.0 * n;
    if (m == d_ - k_ - 1) return -sl * 2.0 * n;
    return 0.0;
  }

  double max_abs_coefficient() const {
    double out = 0.0;
    for (int l = 0; l <= d_; ++l)
      for (int m = -1; m <= d_ - k_; ++m)
        out = std::max(out, std::abs(coefficient(l, m)));
    return out;
  }

  double hidden(int l, int m, InputView x) const {
    double all = 0.0, off = 0.0;
    for (int j = 0; j < d_; ++j) {
      all += x[static_cast<std::size_t>(j)];
      if (j >= k_) off += x[static_cast<std::size_t>(j)];
    }
    return activate(all - off / (2.0 * (d_ - k_)) + hinge_grid_offset(l, m, d_, k_),
                    Activation::kRamp);
  }

  double evaluate(InputView x) const {
    double out = 0.0;
    for (int l = 0; l <= d_; ++l)
      for (int m = -1; m <= d_ - k_; ++m) out += coefficient(l, m) * hidden(l, m, x);
    return out;
  }

 private:
  int d_, k_;
  SpanTableA table_;
};

// chi_[k] from the k+1 ReLU units sigma_i(x) = ReLU(mean_{j<k} x_j + b_i),
// b_i = -1 + 2(i+1)/k.
class SpanConstructionB {
 public:
  explicit SpanConstructionB(int k) : k_(k) {
    if (k < 2 || k % 2 != 0) {
      throw HypothesisViolation("span construction B needs even k >= 2");
    }
  }

  int k() const { return k_; }
  double bias(int i) const { return -1.0 + 2.0 * (i + 1) / k_; }

  double coefficient(int i) const {
    const double s = (i % 2 == 0) ? 1.0 : -1.0;
    if (i <= k_ - 2) return s * 2.0 * k_;
    if (i == k_ - 1) return s * 1.5 * k_;
    return s * 0.5 * k_;
  }

  double max_abs_coefficient() const {
    double out = 0.0;
    for (int i = 0; i <= k_; ++i) out = std::max(out, std::abs(coefficient(i)));
    return out;
  }

  double hidden(int i, InputView x) const {
    double s = 0.0;
    for (int j = 0; j < k_; ++j) s += x[static_cast<std::size_t>(j)];
    return activate(s / k_ + bias(i), Activation::kRelu);
  }

  double evaluate(InputView x) const {
    double out = 0.0;
    for (int i = 0; i <= k_; ++i) out += coefficient(i) * hidden(i, x);
    return out;
  }

 private:
  int k_;
};

inline constexpr double kSpanTolerance = 1e-9;

inline Report verify_span_hinge(int d, int k,
                                SpanTableA table = SpanTableA::kCorrected) {
  const SpanConstructionA a(d, k, table);
  const ParitySupport target = ParitySupport::prefix(d, k);
  Report r;
  r.check = "span_hinge";
  r.params = {{"d", d}, {"k", k},
              {"table", table == SpanTableA::kPrinted ? "printed" : "corrected"}};
  r.bound = kSpanTolerance;
  std::uint64_t failing = 0;
  auto visit = [&](InputView x) {
    const double res = std::abs(a.evaluate(x) - parity_eval(target, x));
    r.metric = std::max(r.metric, res);
    if (res > kSpanTolerance) ++failing;
  };
  if (d <= kMaxMaterializedDim) {
    for_each_point(ProductMeasure::uniform(d), [&](InputView x, double) { visit(x); });
    r.details["points"] = std::uint64_t{1} << d;
  } else {
    Rng rng(static_cast<std::uint64_t>(d) * 1000 + k);
    const ProductMeasure m = ProductMeasure::uniform(d);
    Input x(static_cast<std::size_t>(d));
    for (int i = 0; i < 100000; ++i) {
      sample_input_into(m, rng, x);
      visit(x);
    }
    r.details["points"] = 100000;
  }
  const double coef = a.max_abs_coefficient();
  r.details["points_above_tolerance"] = failing;
  r.details["max_abs_coefficient"] = coef;
  r.details["coefficient_bound"] = 4.0 * (d - k);
  r.pass = r.metric <= r.bound && coef <= 4.0 * (d - k);
  return r;
}

inline Report verify_span_cov(int k) {
  const SpanConstructionB c(k);
  const ParitySupport target = ParitySupport::prefix(k, k);
  Report r;
  r.check = "span_cov";
  r.params = {{"k", k}};
  r.bound = kSpanTolerance;
  for_each_point(ProductMeasure::uniform(k), [&](InputView x, double) {
    r.metric = std::max(r.metric, std::abs(c.evaluate(x) - parity_eval(target, x)));
  });
  const double coef = c.max_abs_coefficient();
  r.details["max_abs_coefficient"] = coef;
  r.details["coefficient_bound"] = 2.0 * k;
  r.pass = r.metric <= r.bound && coef <= 2.0 * k;
  return r;
}

// Closed-form population gradients at the theory initializations.
struct GradientClosedForm {
  double w_support;
  double w_off;
  double b;
};

inline GradientClosedForm closed_form_gradient(TheoremVariant v, int k, double p,
                                               int N) {
  const double mu = 2.0 * p - 1.0;
  if (v == TheoremVariant::kHingeA) {
    return {-std::pow(mu, k - 1) / (2.0 * N), -std::pow(mu, k + 1) / (2.0 * N),
            -std::pow(mu, k) / (2.0 * N)};
  }
  return {-(std::pow(mu, k - 1) - std::pow(mu, k + 1)) / (16.0 * N), 0.0, 0.0};
}

inline Report verify_population_gradients(
    TheoremVariant v, int d, int k, double p, int N, std::uint64_t seed = 0,
    HingeBiasScaling scaling = HingeBiasScaling::kActiveRange) {
  if (d > 14) throw CapacityError("verify_population_gradients: d <= 14");
  InitSpec spec;
  spec.scheme = v == TheoremVariant::kHingeA ? InitScheme::kHingeTheory
                                             : InitScheme::kCovTheory;
  spec.hinge_scaling = scaling;
  Rng rng(seed);
  const NetworkParams params = init(spec, N, d, k, rng);
  const TargetFunction target(ParitySupport::prefix(d, k));
  const LabeledBatch all = exhaustive_batch(ProductMeasure(p, d), target);
  const LossKind loss =
      v == TheoremVariant::kHingeA ? LossKind::kHinge : LossKind::kCovariance;
  const ParamGrad g = batch_gradient(params, all, loss).grad;
  const GradientClosedForm cf = closed_form_gradient(v, k, p, N);

  Report r;
  r.check = "population_gradients";
  r.params = {{"variant", v == TheoremVariant::kHingeA ? "hinge_a" : "cov_b"},
              {"d", d}, {"k", k}, {"p", p}, {"N", N},
              {"bias_scaling",
               scaling == HingeBiasScaling::kPrinted ? "printed" : "active_range"}};
  r.bound = 1e-12;
  double dw_on = 0.0, dw_off = 0.0, db = 0.0;
  for (Eigen::Index i = 0; i < g.w.rows(); ++i) {
    for (int j = 0; j < d; ++j) {
      const double diff = std::abs(g.w(i, j) - (j < k ? cf.w_support : cf.w_off));
      (j < k ? dw_on : dw_off) = std::max(j < k ? dw_on : dw_off, diff);
    }
    db = std::max(db, std::abs(g.b(i) - cf.b));
  }
  r.metric = std::max({dw_on, dw_off, db});
  r.details = {{"w_support", cf.w_support}, {"w_off", cf.w_off}, {"b", cf.b},
               {"max_diff_w_support", dw_on}, {"max_diff_w_off", dw_off},
               {"max_diff_b", db}};
  r.pass = r.metric <= r.bound;
  return r;
}

// Phase-1 outcome of the layer-wise protocols with an exhaustive gradient.
inline Report verify_support_recovery(TheoremVariant v, int d, int k, int N = 8,
                                      std::uint64_t seed = 0) {
  TheoremOverrides ov;
  ov.hidden = N;
  ov.phase2_steps = 0;
  const TheoremRun run = train_layerwise_theorem(v, d, k, 1.0, 0.5, ov, seed);
  const bool hinge = v == TheoremVariant::kHingeA;
  const double on = hinge ? 1.0 : 1.0 / k;
  const double off = hinge ? 1.0 - 1.0 / (2.0 * (d - k)) : 0.0;
  Report r;
  r.check = "support_recovery";
  r.params = {{"variant", hinge ? "hinge_a" : "cov_b"}, {"d", d}, {"k", k},
              {"N", N}, {"p1", run.p1}};
  r.bound = 1e-12;
  const auto& w = run.after_phase1.w;
  for (Eigen::Index i = 0; i < w.rows(); ++i)
    for (int j = 0; j < d; ++j)
      r.metric = std::max(r.metric, std::abs(w(i, j) - (j < k ? on : off)));
  const double a_max = run.after_phase1.a.cwiseAbs().maxCoeff();
  r.details = {{"w_support", on}, {"w_off", off}, {"max_abs_a", a_max}};
  r.pass = r.metric <= r.bound && a_max <= r.bound;
  return r;
}

// Cov(chi_S, chi_S') under Rad(p) for every pair of supports of [d], d <= 8.
inline Report verify_covariance_formula(int max_d, const std::vector<double>& ps) {
  if (max_d < 1 || max_d > 10) {
    throw CapacityError("verify_covariance_formula: need 1 <= d <= 10");
  }
  Report r;
  r.check = "covariance_formula";
  r.params = {{"max_d", max_d}, {"p", ps}};
  r.bound = 1e-12;
  double printed_err = 0.0;
  nlohmann::json printed_cases = nlohmann::json::array();
  for (double p : ps) {
    const int d = max_d;
    const std::uint32_t n = 1u << d;
    // chi_S(x) for every S, x as bit masks: (-1)^{|S \ x|}.
    std::vector<double> mass(n);
    for (std::uint32_t x = 0; x < n; ++x) {
      const int ones = std::popcount(x);
      mass[x] = std::pow(p, ones) * std::pow(1.0 - p, d - ones);
    }
    std::vector<double> mean(n, 0.0);
    auto chi = [](std::uint32_t s, std::uint32_t x) {
      return (std::popcount(s & ~x) % 2 == 0) ? 1.0 : -1.0;
    };
    for (std::uint32_t s = 0; s < n; ++s)
      for (std::uint32_t x = 0; x < n; ++x) mean[s] += mass[x] * chi(s, x);
    for (std::uint32_t s = 0; s < n; ++s) {
      for (std::uint32_t t = s; t < n; ++t) {
        double e = 0.0;
        for (std::uint32_t x = 0; x < n; ++x) e += mass[x] * chi(s ^ t, x);
        const double cov = e - mean[s] * mean[t];
        const int k1 = std::popcount(s), k2 = std::popcount(t);
        const int ov = std::popcount(s & t);
        r.metric = std::max(r.metric,
                            std::abs(cov - parity_covariance_analytic(p, k1, k2, ov)));
        if (s == t && k1 > 0) {
          const double perr = std::abs(cov - parity_covariance_printed(p, k1, ov));
          if (perr > printed_err) {
            printed_err = perr;
            printed_cases = nlohmann::json{{"p", p}, {"k", k1},
                                           {"exhaustive", cov},
                                           {"printed", parity_covariance_printed(p, k1, ov)}};
          }
        }
      }
    }
  }
  r.details = {{"printed_form_max_error_same_support", printed_err},
               {"printed_form_worst_case", printed_cases},
               {"printed_form_fails", printed_err > 1e-6}};
  r.pass = r.metric <= r.bound;
  return r;
}

// Central finite differences of the batch loss against batch_gradient, on
// random small problems that keep every kink at least `margin` away.
inline Report verify_finite_differences(LossKind loss, Activation act, int cases,
                                        std::uint64_t seed) {
  constexpr double kStep = 1e-6;
  constexpr double kMargin = 1e-3;
  Rng rng(seed);
  Report r;
  r.check = "finite_differences";
  r.params = {{"loss", loss_name(loss)}, {"activation", activation_name(act)},
              {"cases", cases}};
  r.bound = 1e-6;
  int done = 0, rejected = 0;
  auto batch_loss = [&](const NetworkParams& p, const LabeledBatch& b) {
    return batch_gradient(p, b, loss).loss;
  };
  while (done < cases) {
    const int d = 2 + static_cast<int>(rng.uniform_index(5));
    const int N = 1 + static_cast<int>(rng.uniform_index(5));
    const Eigen::Index B = 2 + static_cast<Eigen::Index>(rng.uniform_index(7));
    NetworkParams p;
    p.activation = act;
    p.a.resize(N);
    p.w.resize(N, d);
    p.b.resize(N);
    for (int i = 0; i < N; ++i) p.a(i) = rng.uniform(-1.0, 1.0);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < d; ++j) p.w(i, j) = rng.uniform(-0.5, 0.5);
    for (int i = 0; i < N; ++i) p.b(i) = rng.uniform(-0.2, 1.2);
    const ParitySupport s = ParitySupport::prefix(d, 1 + static_cast<int>(rng.uniform_index(d)));
    LabeledBatch batch = sample_batch(ProductMeasure(rng.uniform(0.2, 0.8), d),
                                      TargetFunction(s), B, rng);
    batch.weights.resize(B);
    for (Eigen::Index i = 0; i < B; ++i) batch.weights(i) = rng.uniform(0.5, 1.5);
    batch.weights /= batch.weights.sum();

    const Eigen::MatrixXd x = batch.inputs.cast<double>();
    const Eigen::MatrixXd z = batch_preactivations(p, x);
    bool near_kink = false;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      const double v = z.data()[i];
      if (std::abs(v) < kMargin || (act == Activation::kRamp && std::abs(v - 1.0) < kMargin)) {
        near_kink = true;
      }
    }
    const GradientResult g = batch_gradient(p, batch, loss);
    const Eigen::VectorXd pred = forward_batch(p, x);
    for (Eigen::Index i = 0; i < B; ++i) {
      double margin = 0.0;
      if (loss == LossKind::kHinge) margin = 1.0 - batch.labels(i) * pred(i);
      if (loss == LossKind::kCovariance) {
        margin = 1.0 - (batch.labels(i) - g.ctx.mean_label) * (pred(i) - g.ctx.mean_pred);
      }
      if (loss != LossKind::kSquare && std::abs(margin) < kMargin) near_kink = true;
    }
    if (near_kink) {
      ++rejected;
      continue;
    }
    const Eigen::VectorXd analytic = g.grad.flatten();
    Eigen::VectorXd fd(analytic.size());
    Eigen::Index idx = 0;
    auto probe = [&](double& param) {
      const double keep = param;
      param = keep + kStep;
      const double up = batch_loss(p, batch);
      param = keep - kStep;
      const double down = batch_loss(p, batch);
      param = keep;
      fd(idx++) = (up - down) / (2.0 * kStep);
    };
    for (int i = 0; i < N; ++i) probe(p.a(i));
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < d; ++j) probe(p.w(i, j));
    for (int i = 0; i < N; ++i) probe(p.b(i));
    const double scale = std::max(analytic.norm(), fd.norm());
    const double rel = scale == 0.0 ? 0.0 : (analytic - fd).norm() / scale;
    r.metric = std::max(r.metric, rel);
    ++done;
  }
  r.details = {{"rejected_near_kink", rejected}, {"step", kStep}, {"margin", kMargin}};
  r.pass = r.metric <= r.bound;
  return r;
}

// Deviation of sampled phase-1 gradients from the exact one, per batch size.
// The quantile of the max-coordinate deviation is compared with the zeta
// obtained by solving the lemma's batch-size condition for zeta.
inline double concentration_zeta(TheoremVariant v, int d, int N, Eigen::Index B,
                                 double delta) {
  if (v == TheoremVariant::kHingeA) {
    return std::sqrt(std::log((static_cast<double>(N) * d + N) / delta) /
                     (8.0 * N * N * static_cast<double>(B)));
  }
  return std::sqrt(std::log(static_cast<double>(d) * N / delta) /
                   (2.0 * static_cast<double>(B)));
}

inline Report verify_gradient_concentration(TheoremVariant v, int d, int k, int N,
                                            const std::vector<Eigen::Index>& batches,
                                            int trials, double delta,
                                            std::uint64_t seed) {
  const bool hinge = v == TheoremVariant::kHingeA;
  InitSpec spec;
  spec.scheme = hinge ? InitScheme::kHingeTheory : InitScheme::kCovTheory;
  Rng rng(seed);
  const NetworkParams params = init(spec, N, d, k, rng);
  const double p1 = hinge ? (hinge_theorem_mu(d, k) + 1.0) / 2.0 : 1.0 - 1.0 / (2.0 * k);
  const ProductMeasure m(p1, d);
  const TargetFunction target(ParitySupport::prefix(d, k));
  const LossKind loss = hinge ? LossKind::kHinge : LossKind::kCovariance;
  const ParamGrad exact = batch_gradient(params, exhaustive_batch(m, target), loss).grad;

  Report r;
  r.check = "gradient_concentration";
  r.params = {{"variant", hinge ? "hinge_a" : "cov_b"}, {"d", d}, {"k", k},
              {"N", N}, {"B", batches}, {"trials", trials}, {"delta", delta}};
  nlohmann::json per_b = nlohmann::json::array();
  std::vector<double> quantiles;
  bool ok = true;
  double max_abs_grad = 0.0;
  for (Eigen::Index B : batches) {
    std::vector<double> dev;
    dev.reserve(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t) {
      const ParamGrad g = batch_gradient(params, sample_batch(m, target, B, rng), loss).grad;
      max_abs_grad = std::max({max_abs_grad, g.w.cwiseAbs().maxCoeff(),
                               g.b.cwiseAbs().maxCoeff()});
      dev.push_back(std::max((g.w - exact.w).cwiseAbs().maxCoeff(),
                             (g.b - exact.b).cwiseAbs().maxCoeff()));
    }
    std::sort(dev.begin(), dev.end());
    const auto qi = static_cast<std::size_t>(
        std::ceil((1.0 - delta) * static_cast<double>(trials))) - 1;
    const double q = dev[std::min(qi, dev.size() - 1)];
    const double zeta = concentration_zeta(v, d, N, B, delta);
    quantiles.push_back(q);
    ok = ok && q <= zeta;
    per_b.push_back({{"B", B}, {"quantile", q}, {"zeta", zeta}});
  }
  nlohmann::json ratios = nlohmann::json::array();
  double worst = 0.0;
  for (std::size_t i = 1; i < quantiles.size(); ++i) {
    const double ratio = quantiles[i] / quantiles[i - 1];
    const double expected = std::sqrt(static_cast<double>(batches[i - 1]) /
                                      static_cast<double>(batches[i]));
    ratios.push_back(ratio);
    worst = std::max(worst, std::abs(ratio / expected - 1.0));
  }
  r.metric = worst;
  r.bound = 0.2;
  const bool bounded = !hinge || max_abs_grad <= 1.0 / (2.0 * N) + 1e-15;
  r.details = {{"per_batch", per_b}, {"ratios", ratios},
               {"quantile_within_zeta", ok},
               {"max_abs_sampled_gradient", max_abs_grad},
               {"sampled_gradient_bounded", bounded}};
  r.pass = ok && bounded && worst <= r.bound;
  return r;
}

inline double hamming_tail_bound(double gap, int d) {
  return 2.0 * std::exp(-gap * gap * d);
}

// Empirical P(H >= eps_hi d) and P(H <= eps_lo d) under Rad(p) against the
// bound 2 exp(-gap^2 d) plus three Monte-Carlo standard deviations.
inline Report verify_hamming_tail(double p, int d, double eps_lo, double eps_hi,
                                  std::int64_t n, std::uint64_t seed) {
  if (!(eps_lo <= p && p <= eps_hi)) {
    throw std::invalid_argument("verify_hamming_tail: need eps_lo <= p <= eps_hi");
  }
  if (n < 1) throw std::invalid_argument("verify_hamming_tail: n >= 1");
  Rng rng(seed);
  const ProductMeasure m(p, d);
  Input x(static_cast<std::size_t>(d));
  std::int64_t hi = 0, lo = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    sample_input_into(m, rng, x);
    const int h = hamming_weight(x);
    if (h >= eps_hi * d) ++hi;
    if (h <= eps_lo * d) ++lo;
  }
  const double nd = static_cast<double>(n);
  auto slack = [&](double bound) {
    const double b = std::min(bound, 1.0);
    return 3.0 * std::sqrt(b * (1.0 - b) / nd);
  };
  const double bound_hi = hamming_tail_bound(eps_hi - p, d);
  const double bound_lo = hamming_tail_bound(p - eps_lo, d);
  const double tail_hi = static_cast<double>(hi) / nd;
  const double tail_lo = static_cast<double>(lo) / nd;
  Report r;
  r.check = "hamming_tail";
  r.params = {{"p", p}, {"d", d}, {"eps_lo", eps_lo}, {"eps_hi", eps_hi}, {"n", n}};
  r.metric = std::max(tail_hi - bound_hi - slack(bound_hi),
                      tail_lo - bound_lo - slack(bound_lo));
  r.bound = 0.0;
  r.details = {{"upper_tail", tail_hi}, {"upper_bound", bound_hi},
               {"upper_slack", slack(bound_hi)}, {"lower_tail", tail_lo},
               {"lower_bound", bound_lo}, {"lower_slack", slack(bound_lo)}};
  r.pass = r.metric <= r.bound;
  return r;
}

// Every check at its default grid.
inline std::vector<Report> verify_all(std::uint64_t seed) {
  std::vector<Report> out;
  const std::vector<std::pair<int, int>> grid_a = {{4, 2}, {6, 2}, {8, 2}, {8, 4}, {10, 4}};
  for (auto [d, k] : grid_a) out.push_back(verify_span_hinge(d, k));
  for (int k : {2, 4, 6, 8, 10}) out.push_back(verify_span_cov(k));
  const std::vector<std::pair<int, int>> grid_g = {{6, 2}, {8, 2}, {8, 4}, {10, 4}, {12, 4}};
  for (auto [d, k] : grid_g) {
    for (double p : {0.6, 0.75, 0.9}) {
      out.push_back(verify_population_gradients(TheoremVariant::kHingeA, d, k, p, 4, seed));
      out.push_back(verify_population_gradients(TheoremVariant::kCovB, d, k, p, 4, seed));
    }
    out.push_back(verify_support_recovery(TheoremVariant::kHingeA, d, k, 8, seed));
    out.push_back(verify_support_recovery(TheoremVariant::kCovB, d, k, 8, seed));
  }
  out.push_back(verify_covariance_formula(8, {0.5, 0.6, 0.75, 0.9}));
  int i = 0;
  for (LossKind l : {LossKind::kHinge, LossKind::kSquare, LossKind::kCovariance}) {
    for (Activation a : {Activation::kRelu, Activation::kRamp}) {
      out.push_back(verify_finite_differences(l, a, 100, Rng::derive_seed(seed, i++)));
    }
  }
  out.push_back(verify_hamming_tail(0.25, 100, 0.0, 0.5, 100000, seed));
  for (TheoremVariant v : {TheoremVariant::kHingeA, TheoremVariant::kCovB}) {
    out.push_back(verify_gradient_concentration(v, 10, 2, 4, {256, 1024, 4096}, 400,
                                                0.1, Rng::derive_seed(seed, 100)));
  }
  return out;
}

inline nlohmann::json verification_manifest(const std::vector<Report>& reports) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : reports) j.push_back(to_json(r));
  return j;
}

}  // namespace clparity

#endif  // CLPARITY_THEORY_VERIFY_HPP_
