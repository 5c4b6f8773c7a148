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

// Two-layer network NN(x) = sum_i a_i sigma(<w_i, x> + b_i) with Ramp or
// ReLU hidden units, its gradients, and the initialization schemes.

#ifndef CLPARITY_NETWORK_HPP_
#define CLPARITY_NETWORK_HPP_

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "clparity/boolean_data.hpp"
#include "clparity/errors.hpp"
#include "clparity/losses.hpp"
#include "clparity/rng.hpp"

namespace clparity {

enum class Activation { kRamp, kRelu };

inline std::string_view activation_name(Activation a) {
  return a == Activation::kRamp ? "ramp" : "relu";
}

inline Activation parse_activation(std::string_view s) {
  if (s == "ramp") return Activation::kRamp;
  if (s == "relu") return Activation::kRelu;
  throw ConfigError("activation", "expected ramp | relu, got '" +
                                      std::string(s) + "'");
}

// Ramp(z) = 0 for z <= 0, z on (0, 1], 1 above.
inline double activate(double z, Activation kind) {
  if (kind == Activation::kRelu) return z > 0.0 ? z : 0.0;
  return z <= 0.0 ? 0.0 : (z > 1.0 ? 1.0 : z);
}

// Subgradients at the kinks: Ramp uses the closed interval [0, 1], ReLU the
// strict z > 0.
inline double activation_derivative(double z, Activation kind) {
  if (kind == Activation::kRelu) return z > 0.0 ? 1.0 : 0.0;
  return (z >= 0.0 && z <= 1.0) ? 1.0 : 0.0;
}

struct NetworkParams {
  Eigen::VectorXd a;  // N output weights
  Eigen::MatrixXd w;  // N x d first-layer weights
  Eigen::VectorXd b;  // N biases
  Activation activation = Activation::kRelu;

  int hidden() const { return static_cast<int>(a.size()); }
  int dim() const { return static_cast<int>(w.cols()); }

  void validate() const {
    if (a.size() < 1 || w.cols() < 1) {
      throw DimensionMismatch("NetworkParams: need N >= 1 and d >= 1");
    }
    if (b.size() != a.size() || w.rows() != a.size()) {
      throw DimensionMismatch("NetworkParams: |a|, |b|, rows(w) disagree");
    }
    if (!a.allFinite() || !b.allFinite() || !w.allFinite()) {
      throw std::invalid_argument("NetworkParams: non-finite entry");
    }
  }
};

// Gradient with the same shape as NetworkParams.
struct ParamGrad {
  Eigen::VectorXd a;
  Eigen::MatrixXd w;
  Eigen::VectorXd b;

  static ParamGrad zeros_like(const NetworkParams& p) {
    return {Eigen::VectorXd::Zero(p.a.size()),
            Eigen::MatrixXd::Zero(p.w.rows(), p.w.cols()),
            Eigen::VectorXd::Zero(p.b.size())};
  }

  ParamGrad& operator+=(const ParamGrad& o) {
    a += o.a;
    w += o.w;
    b += o.b;
    return *this;
  }
  ParamGrad& operator*=(double s) {
    a *= s;
    w *= s;
    b *= s;
    return *this;
  }

  double max_abs() const {
    return std::max({a.cwiseAbs().maxCoeff(), w.cwiseAbs().maxCoeff(),
                     b.cwiseAbs().maxCoeff()});
  }

  // a, then w row-major, then b.
  Eigen::VectorXd flatten() const {
    Eigen::VectorXd out(a.size() + w.size() + b.size());
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i) out(k++) = a(i);
    for (Eigen::Index i = 0; i < w.rows(); ++i)
      for (Eigen::Index j = 0; j < w.cols(); ++j) out(k++) = w(i, j);
    for (Eigen::Index i = 0; i < b.size(); ++i) out(k++) = b(i);
    return out;
  }
};

inline void check_input(const NetworkParams& p, Eigen::Index len) {
  if (len != p.w.cols()) {
    throw DimensionMismatch("network: input length " + std::to_string(len) +
                            " != d = " + std::to_string(p.w.cols()));
  }
}

inline double preactivation(const NetworkParams& p, int i, InputView x) {
  double z = p.b(i);
  for (std::size_t j = 0; j < x.size(); ++j) {
    z += p.w(i, static_cast<Eigen::Index>(j)) * x[j];
  }
  return z;
}

inline double forward(const NetworkParams& p, InputView x) {
  check_input(p, static_cast<Eigen::Index>(x.size()));
  double out = 0.0;
  for (int i = 0; i < p.hidden(); ++i) {
    out += p.a(i) * activate(preactivation(p, i, x), p.activation);
  }
  return out;
}

// B x N preactivations for a batch given as doubles.
inline Eigen::MatrixXd batch_preactivations(const NetworkParams& p,
                                            const Eigen::MatrixXd& x) {
  check_input(p, x.cols());
  Eigen::MatrixXd z(x.rows(), p.w.rows());
  z.noalias() = x * p.w.transpose();
  z.rowwise() += p.b.transpose();
  return z;
}

inline Eigen::MatrixXd apply_activation(const Eigen::MatrixXd& z,
                                        Activation kind) {
  if (kind == Activation::kRelu) return z.cwiseMax(0.0);
  return z.cwiseMax(0.0).cwiseMin(1.0);
}

inline Eigen::MatrixXd apply_derivative(const Eigen::MatrixXd& z,
                                        Activation kind) {
  return z.unaryExpr([kind](double v) { return activation_derivative(v, kind); });
}

inline Eigen::VectorXd forward_batch(const NetworkParams& p,
                                     const Eigen::MatrixXd& x) {
  return apply_activation(batch_preactivations(p, x), p.activation) * p.a;
}

// Per-sample gradient of the loss at x with the covariance context held
// fixed.
inline ParamGrad backward(const NetworkParams& p, LossKind loss, double label,
                          const CovContext& ctx, InputView x) {
  check_input(p, static_cast<Eigen::Index>(x.size()));
  ParamGrad g = ParamGrad::zeros_like(p);
  std::vector<double> z(static_cast<std::size_t>(p.hidden()));
  double pred = 0.0;
  for (int i = 0; i < p.hidden(); ++i) {
    z[static_cast<std::size_t>(i)] = preactivation(p, i, x);
    pred += p.a(i) * activate(z[static_cast<std::size_t>(i)], p.activation);
  }
  const double slope = loss_slope(loss, label, pred, ctx);
  if (slope == 0.0) return g;
  for (int i = 0; i < p.hidden(); ++i) {
    const double zi = z[static_cast<std::size_t>(i)];
    g.a(i) = slope * activate(zi, p.activation);
    const double delta = slope * p.a(i) * activation_derivative(zi, p.activation);
    g.b(i) = delta;
    for (std::size_t j = 0; j < x.size(); ++j) {
      g.w(i, static_cast<Eigen::Index>(j)) = delta * x[j];
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Initialization.

enum class InitScheme { kUniformStandard, kHingeTheory, kCovTheory };

inline std::string_view init_scheme_name(InitScheme s) {
  switch (s) {
    case InitScheme::kUniformStandard: return "uniform_standard";
    case InitScheme::kHingeTheory: return "hinge_theory";
    case InitScheme::kCovTheory: return "cov_theory";
  }
  return "?";
}

inline InitScheme parse_init_scheme(std::string_view s) {
  if (s == "uniform_standard") return InitScheme::kUniformStandard;
  if (s == "hinge_theory") return InitScheme::kHingeTheory;
  if (s == "cov_theory") return InitScheme::kCovTheory;
  throw ConfigError("init.scheme",
                    "expected uniform_standard | hinge_theory | cov_theory");
}

// Placement of the hinge-scheme bias grid.
//
// kPrinted is b_lm/(d+1) + 1/2. Most of those values fall outside [0, 1], so
// their Ramp units start with zero gradient and never move in the first step.
// kActiveRange is b_lm/(2(d+1)) + 1/2, which lies in (0, 1] for every grid
// point; the first-step bias multiplier is then 2(d+1) instead of d+1 and
// the units land exactly on sigma_lm.
enum class HingeBiasScaling { kActiveRange, kPrinted };

inline void check_hinge_hypotheses(int d, int k) {
  if (k < 2 || k % 2 != 0 || d % 2 != 0 || 2 * k > d) {
    throw HypothesisViolation(
        "hinge scheme needs k, d even with 2 <= k <= d/2 (got d=" +
        std::to_string(d) + ", k=" + std::to_string(k) + ")");
  }
}

inline void check_cov_hypotheses(int d, int k) {
  if (k < 2 || k % 2 != 0 || k > d) {
    throw HypothesisViolation("covariance scheme needs k even with 2 <= k <= d "
                              "(got d=" + std::to_string(d) +
                              ", k=" + std::to_string(k) + ")");
  }
}

// b_lm = -d + 2l - 1/2 + (m+1)/(d-k), l in {0..d}, m in {-1..d-k}.
inline double hinge_grid_offset(int l, int m, int d, int k) {
  return -d + 2.0 * l - 0.5 + static_cast<double>(m + 1) / (d - k);
}

inline double hinge_bias_scale(int d, HingeBiasScaling scaling) {
  return scaling == HingeBiasScaling::kPrinted ? d + 1.0 : 2.0 * (d + 1.0);
}

inline double hinge_grid_bias(int l, int m, int d, int k,
                              HingeBiasScaling scaling) {
  return hinge_grid_offset(l, m, d, k) / hinge_bias_scale(d, scaling) + 0.5;
}

// All (d+1)(d-k+2) grid biases, l-major.
inline std::vector<double> hinge_bias_grid(int d, int k,
                                           HingeBiasScaling scaling) {
  check_hinge_hypotheses(d, k);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>((d + 1) * (d - k + 2)));
  for (int l = 0; l <= d; ++l) {
    for (int m = -1; m <= d - k; ++m) {
      out.push_back(hinge_grid_bias(l, m, d, k, scaling));
    }
  }
  return out;
}

// {2(i+1)/k : i = 0..k}.
inline std::vector<double> cov_bias_grid(int k) {
  std::vector<double> out;
  for (int i = 0; i <= k; ++i) out.push_back(2.0 * (i + 1) / k);
  return out;
}

struct InitSpec {
  InitScheme scheme = InitScheme::kUniformStandard;
  // Used by kUniformStandard only; the theory schemes fix their activation.
  Activation activation = Activation::kRelu;
  // Half-width of the uniform draws; <= 0 means 1/sqrt(d).
  double scale = 0.0;
  // Half-width for the output weights a; <= 0 means same as `scale`.
  double output_scale = 0.0;
  HingeBiasScaling hinge_scaling = HingeBiasScaling::kActiveRange;
};

inline NetworkParams init(const InitSpec& spec, int N, int d, int k, Rng& rng) {
  if (N < 1 || d < 1) throw DimensionMismatch("init: need N >= 1 and d >= 1");
  NetworkParams p;
  p.w = Eigen::MatrixXd::Zero(N, d);
  p.a.resize(N);
  p.b.resize(N);
  switch (spec.scheme) {
    case InitScheme::kUniformStandard: {
      const double s = spec.scale > 0.0 ? spec.scale : 1.0 / std::sqrt(d);
      const double sa = spec.output_scale > 0.0 ? spec.output_scale : s;
      p.activation = spec.activation;
      for (int i = 0; i < N; ++i) p.a(i) = rng.uniform(-sa, sa);
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < d; ++j) p.w(i, j) = rng.uniform(-s, s);
      for (int i = 0; i < N; ++i) p.b(i) = rng.uniform(-s, s);
      break;
    }
    case InitScheme::kHingeTheory: {
      const auto grid = hinge_bias_grid(d, k, spec.hinge_scaling);
      p.activation = Activation::kRamp;
      p.a.setConstant(1.0 / (2.0 * N));
      for (int i = 0; i < N; ++i) p.b(i) = grid[rng.uniform_index(grid.size())];
      break;
    }
    case InitScheme::kCovTheory: {
      check_cov_hypotheses(d, k);
      const auto grid = cov_bias_grid(k);
      p.activation = Activation::kRelu;
      p.a.setConstant(1.0 / (16.0 * N));
      for (int i = 0; i < N; ++i) p.b(i) = grid[rng.uniform_index(grid.size())];
      break;
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Checkpoints: {activation, N, d, a, b, w}. nlohmann::json renders doubles
// with the shortest representation that round-trips.

inline nlohmann::json to_json(const NetworkParams& p) {
  nlohmann::json w = nlohmann::json::array();
  for (Eigen::Index i = 0; i < p.w.rows(); ++i) {
    std::vector<double> row(p.w.row(i).begin(), p.w.row(i).end());
    w.push_back(row);
  }
  return {{"activation", activation_name(p.activation)},
          {"N", p.hidden()},
          {"d", p.dim()},
          {"a", std::vector<double>(p.a.begin(), p.a.end())},
          {"b", std::vector<double>(p.b.begin(), p.b.end())},
          {"w", w}};
}

inline NetworkParams network_from_json(const nlohmann::json& j) {
  NetworkParams p;
  p.activation = parse_activation(j.at("activation").get<std::string>());
  const int n = j.at("N").get<int>();
  const int d = j.at("d").get<int>();
  const auto a = j.at("a").get<std::vector<double>>();
  const auto b = j.at("b").get<std::vector<double>>();
  const auto w = j.at("w").get<std::vector<std::vector<double>>>();
  if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n ||
      static_cast<int>(w.size()) != n) {
    throw DimensionMismatch("checkpoint: N disagrees with array lengths");
  }
  p.a = Eigen::Map<const Eigen::VectorXd>(a.data(), n);
  p.b = Eigen::Map<const Eigen::VectorXd>(b.data(), n);
  p.w.resize(n, d);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(w[static_cast<std::size_t>(i)].size()) != d) {
      throw DimensionMismatch("checkpoint: row of w has wrong length");
    }
    for (int j2 = 0; j2 < d; ++j2) p.w(i, j2) = w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j2)];
  }
  p.validate();
  return p;
}

}  // namespace clparity

#endif  // CLPARITY_NETWORK_HPP_
