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

// Boolean inputs in {-1,+1}^d: biased product measures, parity and Hamming
// mixture targets, batch sampling and correlation utilities.

#ifndef CLPARITY_BOOLEAN_DATA_HPP_
#define CLPARITY_BOOLEAN_DATA_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "clparity/errors.hpp"
#include "clparity/rng.hpp"

namespace clparity {

using Input = std::vector<std::int8_t>;
using InputView = std::span<const std::int8_t>;
using InputMatrix =
    Eigen::Matrix<std::int8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Largest d for which streaming 2^d enumeration is allowed.
inline constexpr int kMaxExhaustiveDim = 25;
// Largest d for which the 2^d points may be materialized as a batch.
inline constexpr int kMaxMaterializedDim = 20;

// Rad(p)^{(x)d}: each coordinate is +1 with probability p, -1 otherwise.
class ProductMeasure {
 public:
  ProductMeasure(double bias, int dim) : bias_(bias), dim_(dim) {
    if (!(bias >= 0.0 && bias <= 1.0)) {
      throw std::invalid_argument("ProductMeasure: bias must lie in [0,1]");
    }
    if (dim < 1) throw std::invalid_argument("ProductMeasure: dim must be >= 1");
  }

  static ProductMeasure uniform(int dim) { return ProductMeasure(0.5, dim); }

  double bias() const { return bias_; }
  int dim() const { return dim_; }
  // Mean of a single coordinate, 2p - 1.
  double mu() const { return 2.0 * bias_ - 1.0; }

  // Probability mass of one point with the given Hamming weight.
  double point_mass(int hamming) const {
    return std::pow(bias_, hamming) * std::pow(1.0 - bias_, dim_ - hamming);
  }

 private:
  double bias_;
  int dim_;
};

// Sorted, duplicate-free set of coordinates S. Indices are 0-based.
class ParitySupport {
 public:
  ParitySupport(int dim, std::vector<int> indices)
      : dim_(dim), indices_(std::move(indices)) {
    if (dim < 1) throw std::invalid_argument("ParitySupport: dim must be >= 1");
    std::sort(indices_.begin(), indices_.end());
    if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
      throw std::invalid_argument("ParitySupport: duplicate index");
    }
    if (!indices_.empty() && (indices_.front() < 0 || indices_.back() >= dim)) {
      throw DimensionMismatch("ParitySupport: index outside [0, dim)");
    }
  }

  // The first k coordinates, the canonical support used by the theory.
  static ParitySupport prefix(int dim, int k) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    return ParitySupport(dim, std::move(idx));
  }

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(indices_.size()); }
  const std::vector<int>& indices() const { return indices_; }
  bool contains(int j) const {
    return std::binary_search(indices_.begin(), indices_.end(), j);
  }

  std::size_t overlap(const ParitySupport& other) const {
    std::size_t n = 0;
    for (int j : indices_) n += other.contains(j) ? 1 : 0;
    return n;
  }

  // Symmetric difference, the support of the product of the two parities.
  ParitySupport symmetric_difference(const ParitySupport& other) const {
    std::vector<int> out;
    std::set_symmetric_difference(indices_.begin(), indices_.end(),
                                  other.indices_.begin(), other.indices_.end(),
                                  std::back_inserter(out));
    return ParitySupport(std::max(dim_, other.dim_), std::move(out));
  }

  friend bool operator==(const ParitySupport&, const ParitySupport&) = default;

 private:
  int dim_;
  std::vector<int> indices_;
};

// A threshold fraction kept as an exact ratio.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

// G_{S,T,eps}(x) = chi_S(x) if H(x) <= eps*d, chi_T(x) otherwise.
class HammingMixtureSpec {
 public:
  HammingMixtureSpec(ParitySupport low, ParitySupport high, Fraction eps)
      : low_(std::move(low)), high_(std::move(high)), eps_(eps) {
    if (low_.dim() != high_.dim()) {
      throw DimensionMismatch("HammingMixtureSpec: S and T differ in dim");
    }
    if (eps.den <= 0 || eps.num < 0 || eps.num > eps.den) {
      throw std::invalid_argument("HammingMixtureSpec: eps must be in [0,1]");
    }
  }

  const ParitySupport& support_low() const { return low_; }
  const ParitySupport& support_high() const { return high_; }
  Fraction threshold() const { return eps_; }
  int dim() const { return low_.dim(); }
  // |S n T|. The hardness statements assume 0; overlap is allowed but
  // reported.
  std::size_t overlap() const { return low_.overlap(high_); }

  // H(x) <= eps*d, compared exactly as H*den <= num*d.
  bool selects_low(int hamming) const {
    return static_cast<std::int64_t>(hamming) * eps_.den <=
           eps_.num * static_cast<std::int64_t>(dim());
  }

 private:
  ParitySupport low_;
  ParitySupport high_;
  Fraction eps_;
};

inline int hamming_weight(InputView x) {
  int h = 0;
  for (std::int8_t v : x) h += v > 0 ? 1 : 0;
  return h;
}

inline int parity_eval(const ParitySupport& s, InputView x) {
  int prod = 1;
  for (int j : s.indices()) {
    if (j >= static_cast<int>(x.size())) {
      throw DimensionMismatch("parity_eval: support index beyond input length");
    }
    prod *= x[static_cast<std::size_t>(j)];
  }
  return prod;
}

inline int mixture_eval(const HammingMixtureSpec& g, InputView x) {
  if (static_cast<int>(x.size()) != g.dim()) {
    throw DimensionMismatch("mixture_eval: input length differs from spec dim");
  }
  return g.selects_low(hamming_weight(x)) ? parity_eval(g.support_low(), x)
                                          : parity_eval(g.support_high(), x);
}

// A +-1 valued target: a parity or a Hamming mixture.
class TargetFunction {
 public:
  using Variant = std::variant<ParitySupport, HammingMixtureSpec>;

  TargetFunction(ParitySupport s) : v_(std::move(s)) {}            // NOLINT
  TargetFunction(HammingMixtureSpec g) : v_(std::move(g)) {}       // NOLINT

  int operator()(InputView x) const {
    return std::visit(
        [&](const auto& t) -> int {
          using T = std::decay_t<decltype(t)>;
          if constexpr (std::is_same_v<T, ParitySupport>) {
            if (static_cast<int>(x.size()) != t.dim()) {
              throw DimensionMismatch("target: input length differs from dim");
            }
            return parity_eval(t, x);
          } else {
            return mixture_eval(t, x);
          }
        },
        v_);
  }

  int dim() const {
    return std::visit([](const auto& t) { return t.dim(); }, v_);
  }

  const Variant& variant() const { return v_; }
  const ParitySupport* parity() const { return std::get_if<ParitySupport>(&v_); }
  const HammingMixtureSpec* mixture() const {
    return std::get_if<HammingMixtureSpec>(&v_);
  }

 private:
  Variant v_;
};

inline nlohmann::json to_json(const TargetFunction& f) {
  if (const auto* s = f.parity()) {
    return {{"kind", "parity"}, {"support", s->indices()}};
  }
  const auto& g = *f.mixture();
  return {{"kind", "mixture"},
          {"S", g.support_low().indices()},
          {"T", g.support_high().indices()},
          {"eps", {g.threshold().num, g.threshold().den}}};
}

// Samples with labels; weights empty means the plain 1/B average.
struct LabeledBatch {
  InputMatrix inputs;        // B x d, entries +-1
  Eigen::VectorXd labels;    // B, entries +-1
  Eigen::VectorXd weights;   // empty, or B nonnegative values summing to 1
  double source_bias = 0.5;

  Eigen::Index size() const { return inputs.rows(); }
  Eigen::Index dim() const { return inputs.cols(); }
  InputView row(Eigen::Index i) const {
    return {inputs.data() + i * inputs.cols(),
            static_cast<std::size_t>(inputs.cols())};
  }
  double weight(Eigen::Index i) const {
    return weights.size() == 0 ? 1.0 / static_cast<double>(size()) : weights(i);
  }
};

// d draws, coordinate i is +1 iff the i-th draw is below p.
inline void sample_input_into(const ProductMeasure& m, Rng& rng,
                              std::span<std::int8_t> out) {
  for (auto& v : out) v = rng.bernoulli(m.bias()) ? 1 : -1;
}

inline Input sample_input(const ProductMeasure& m, Rng& rng) {
  Input x(static_cast<std::size_t>(m.dim()));
  sample_input_into(m, rng, x);
  return x;
}

// B i.i.d. rows; consumes exactly B*d draws from rng.
inline LabeledBatch sample_batch(const ProductMeasure& m,
                                 const TargetFunction& target, Eigen::Index B,
                                 Rng& rng) {
  if (B < 1) throw std::invalid_argument("sample_batch: B must be >= 1");
  if (target.dim() != m.dim()) {
    throw DimensionMismatch("sample_batch: target and measure dims differ");
  }
  LabeledBatch batch;
  batch.inputs.resize(B, m.dim());
  batch.labels.resize(B);
  batch.source_bias = m.bias();
  for (Eigen::Index i = 0; i < B; ++i) {
    std::span<std::int8_t> row(batch.inputs.data() + i * m.dim(),
                               static_cast<std::size_t>(m.dim()));
    sample_input_into(m, rng, row);
    batch.labels(i) = target(row);
  }
  return batch;
}

// Point number `index` of the cube: coordinate j is +1 iff bit j is set.
inline void cube_point(std::uint64_t index, std::span<std::int8_t> out) {
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = ((index >> j) & 1u) ? 1 : -1;
  }
}

inline void check_enumerable(int d, const char* who) {
  if (d > kMaxExhaustiveDim) {
    throw CapacityError(std::string(who) + ": exhaustive mode needs d <= " +
                        std::to_string(kMaxExhaustiveDim));
  }
}

// Calls fn(x, mass) for all 2^d points in index order.
template <typename Fn>
void for_each_point(const ProductMeasure& m, Fn&& fn) {
  check_enumerable(m.dim(), "for_each_point");
  const std::uint64_t n = std::uint64_t{1} << m.dim();
  std::vector<double> mass(static_cast<std::size_t>(m.dim()) + 1);
  for (int h = 0; h <= m.dim(); ++h) mass[static_cast<std::size_t>(h)] = m.point_mass(h);
  Input x(static_cast<std::size_t>(m.dim()));
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    cube_point(idx, x);
    fn(InputView(x), mass[static_cast<std::size_t>(hamming_weight(x))]);
  }
}

// All 2^d points weighted by their mass: an exact stand-in for a batch.
inline LabeledBatch exhaustive_batch(const ProductMeasure& m,
                                     const TargetFunction& target) {
  if (m.dim() > kMaxMaterializedDim) {
    throw CapacityError("exhaustive_batch: needs d <= " +
                        std::to_string(kMaxMaterializedDim));
  }
  const Eigen::Index n = Eigen::Index{1} << m.dim();
  LabeledBatch batch;
  batch.inputs.resize(n, m.dim());
  batch.labels.resize(n);
  batch.weights.resize(n);
  batch.source_bias = m.bias();
  Eigen::Index i = 0;
  for_each_point(m, [&](InputView x, double mass) {
    std::copy(x.begin(), x.end(), batch.inputs.data() + i * m.dim());
    batch.labels(i) = target(x);
    batch.weights(i) = mass;
    ++i;
  });
  return batch;
}

// Cov(chi_S, chi_S') under Rad(p): mu^{|S delta S'|} - mu^{k+k'}.
inline double parity_covariance_analytic(double p, int k, int k_other,
                                         int overlap) {
  if (overlap < 0 || overlap > std::min(k, k_other)) {
    throw std::invalid_argument("parity_covariance_analytic: invalid overlap");
  }
  const double mu = 2.0 * p - 1.0;
  return std::pow(mu, k + k_other - 2 * overlap) - std::pow(mu, k + k_other);
}

// The form mu^{2k - |S n S'|} - mu^{2k} as printed in the source text. Kept
// only so the verification suite can show that it fails at S = S'.
inline double parity_covariance_printed(double p, int k, int overlap) {
  const double mu = 2.0 * p - 1.0;
  return std::pow(mu, 2 * k - overlap) - std::pow(mu, 2 * k);
}

// How expectations over the cube are computed.
struct Sampling {
  std::optional<std::size_t> samples;  // nullopt: exhaustive

  static Sampling exhaustive() { return {}; }
  static Sampling monte_carlo(std::size_t n) { return {n}; }
  bool is_exhaustive() const { return !samples.has_value(); }
};

// E_x[f(x) g(x)] under m, exactly (weighted enumeration) or by Monte Carlo.
// g is any callable InputView -> double and is used as is.
template <typename G>
double empirical_correlation(const TargetFunction& f, G&& g,
                             const ProductMeasure& m, Sampling sampling,
                             Rng& rng) {
  if (sampling.is_exhaustive()) {
    check_enumerable(m.dim(), "empirical_correlation");
    double acc = 0.0;
    for_each_point(m, [&](InputView x, double mass) {
      acc += mass * static_cast<double>(f(x)) * g(x);
    });
    return acc;
  }
  const std::size_t n = *sampling.samples;
  if (n == 0) throw std::invalid_argument("empirical_correlation: n must be > 0");
  Input x(static_cast<std::size_t>(m.dim()));
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sample_input_into(m, rng, x);
    acc += static_cast<double>(f(x)) * g(InputView(x));
  }
  return acc / static_cast<double>(n);
}

}  // namespace clparity

#endif  // CLPARITY_BOOLEAN_DATA_HPP_
