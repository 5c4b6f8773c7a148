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

#include "clparity/boolean_data.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

namespace clparity {
namespace {

Input vec(std::initializer_list<int> v) {
  Input x;
  for (int e : v) x.push_back(static_cast<std::int8_t>(e));
  return x;
}

// Weighted enumeration written out directly.
template <typename Fn>
double expect(int d, double p, Fn&& fn) {
  double acc = 0;
  Input x(static_cast<std::size_t>(d));
  for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << d); ++idx) {
    double m = 1;
    for (int j = 0; j < d; ++j) {
      x[static_cast<std::size_t>(j)] = (idx >> j) & 1 ? 1 : -1;
      m *= (idx >> j) & 1 ? p : 1 - p;
    }
    acc += m * fn(InputView(x));
  }
  return acc;
}

TEST(SampleInput, DegenerateMeasures) {
  Rng rng(1);
  for (auto v : sample_input(ProductMeasure(1.0, 7), rng)) EXPECT_EQ(v, 1);
  EXPECT_EQ(sample_input(ProductMeasure(0.0, 3), rng), vec({-1, -1, -1}));
}

TEST(SampleInput, UniformCoordinateMeans) {
  Rng rng(3);
  const int d = 100, n = 100000;
  std::vector<double> sum(d, 0.0);
  Input x(d);
  for (int i = 0; i < n; ++i) {
    sample_input_into(ProductMeasure::uniform(d), rng, x);
    for (int j = 0; j < d; ++j) sum[static_cast<std::size_t>(j)] += x[static_cast<std::size_t>(j)];
  }
  // 4.5 sigma keeps the family-wise false alarm rate over 100 coordinates low.
  for (double s : sum) EXPECT_LE(std::abs(s / n), 4.5 / std::sqrt(n));
}

TEST(HammingWeight, Examples) {
  EXPECT_EQ(hamming_weight(vec({-1, -1, -1, -1, -1})), 0);
  EXPECT_EQ(hamming_weight(vec({1, 1, 1, 1, 1})), 5);
  EXPECT_EQ(hamming_weight(vec({1, -1, 1, -1})), 2);
}

TEST(ParityEval, Examples) {
  const Input x = vec({-1, -1, 1});
  EXPECT_EQ(parity_eval(ParitySupport(3, {}), x), 1);
  EXPECT_EQ(parity_eval(ParitySupport(3, {0, 1}), x), 1);
  EXPECT_THROW(ParitySupport(3, {3}), DimensionMismatch);
  EXPECT_THROW(parity_eval(ParitySupport(5, {4}), x), DimensionMismatch);
}

TEST(ParityEval, MultiplicativityExhaustive) {
  // chi_{1,2} chi_{2,3} = chi_{1,3} on all 8 patterns.
  const ParitySupport s12(3, {0, 1}), s23(3, {1, 2}), s13(3, {0, 2});
  for (int idx = 0; idx < 8; ++idx) {
    Input x(3);
    cube_point(static_cast<std::uint64_t>(idx), x);
    EXPECT_EQ(parity_eval(s12, x) * parity_eval(s23, x), parity_eval(s13, x));
  }
  // All support pairs at d = 6 against the symmetric difference.
  const int d = 6;
  for (int a = 0; a < 64; ++a) {
    for (int b = 0; b < 64; ++b) {
      std::vector<int> ia, ib;
      for (int j = 0; j < d; ++j) {
        if (a >> j & 1) ia.push_back(j);
        if (b >> j & 1) ib.push_back(j);
      }
      const ParitySupport sa(d, ia), sb(d, ib);
      const ParitySupport sd = sa.symmetric_difference(sb);
      for (int idx = 0; idx < 64; ++idx) {
        Input x(d);
        cube_point(static_cast<std::uint64_t>(idx), x);
        ASSERT_EQ(parity_eval(sa, x) * parity_eval(sb, x), parity_eval(sd, x));
      }
    }
  }
}

TEST(ParityEval, MeanUnderBiasedMeasure) {
  for (int d : {4, 8, 12}) {
    for (double p : {0.1, 0.5, 0.8}) {
      for (int k : {0, 1, 3, d}) {
        const ParitySupport s = ParitySupport::prefix(d, k);
        const double mean = expect(d, p, [&](InputView x) { return parity_eval(s, x); });
        EXPECT_NEAR(mean, std::pow(2 * p - 1, k), 1e-12);
      }
    }
  }
}

TEST(MixtureEval, Examples) {
  const HammingMixtureSpec g(ParitySupport(4, {0}), ParitySupport(4, {1}), {1, 2});
  EXPECT_EQ(mixture_eval(g, vec({1, -1, -1, -1})), 1);
  EXPECT_EQ(mixture_eval(g, vec({1, 1, 1, -1})), 1);
  EXPECT_EQ(mixture_eval(g, vec({-1, 1, 1, -1})), -1);  // H = 2 <= 2: chi_S
  EXPECT_THROW(mixture_eval(g, vec({1, 1, 1})), DimensionMismatch);
  EXPECT_EQ(g.overlap(), 0u);
  const HammingMixtureSpec all(ParitySupport(5, {0, 2}), ParitySupport(5, {1}), {1, 1});
  for (int idx = 0; idx < 32; ++idx) {
    Input x(5);
    cube_point(static_cast<std::uint64_t>(idx), x);
    EXPECT_EQ(mixture_eval(all, x), parity_eval(all.support_low(), x));
  }
}

TEST(MixtureEval, ExactBoundary) {
  // eps = 3/10, d = 10: H = 3 is low, H = 4 is high.
  const HammingMixtureSpec g(ParitySupport(10, {0}), ParitySupport(10, {9}), {3, 10});
  EXPECT_TRUE(g.selects_low(3));
  EXPECT_FALSE(g.selects_low(4));
  const HammingMixtureSpec overlapping(ParitySupport(10, {0, 1}), ParitySupport(10, {1, 2}),
                                       {1, 2});
  EXPECT_EQ(overlapping.overlap(), 1u);
}

TEST(SampleBatch, Examples) {
  Rng rng(5);
  const TargetFunction t(ParitySupport::prefix(6, 3));
  EXPECT_EQ(sample_batch(ProductMeasure(1.0, 6), t, 1, rng).labels(0), 1);
  EXPECT_EQ(sample_batch(ProductMeasure(0.0, 6), t, 1, rng).labels(0), -1);
  const TargetFunction even(ParitySupport::prefix(6, 2));
  EXPECT_EQ(sample_batch(ProductMeasure(0.0, 6), even, 1, rng).labels(0), 1);
}

TEST(SampleBatch, DeterministicAndConsumesBTimesD) {
  const TargetFunction t(ParitySupport::prefix(8, 3));
  Rng r1(42), r2(42);
  const auto b1 = sample_batch(ProductMeasure(0.75, 8), t, 4, r1);
  const auto b2 = sample_batch(ProductMeasure(0.75, 8), t, 4, r2);
  EXPECT_EQ(b1.inputs, b2.inputs);
  EXPECT_EQ(b1.labels, b2.labels);
  Rng r3(42);
  for (int i = 0; i < 32; ++i) r3();
  EXPECT_EQ(r1(), r3());
  for (Eigen::Index i = 0; i < b1.size(); ++i) EXPECT_EQ(b1.labels(i), t(b1.row(i)));
}

TEST(Covariance, Examples) {
  EXPECT_DOUBLE_EQ(parity_covariance_analytic(0.5, 3, 3, 3), 1.0);
  EXPECT_DOUBLE_EQ(parity_covariance_analytic(0.8, 2, 3, 0), 0.0);
  EXPECT_DOUBLE_EQ(parity_covariance_analytic(0.75, 2, 2, 1), 0.1875);
  EXPECT_THROW(parity_covariance_analytic(0.5, 2, 2, 3), std::invalid_argument);
}

TEST(Covariance, MatchesEnumerationUpToD10) {
  const int d = 10;
  for (double p : {0.3, 0.75}) {
    for (int k = 0; k <= 4; ++k) {
      for (int k2 = 0; k2 <= 4; ++k2) {
        for (int ov = 0; ov <= std::min(k, k2); ++ov) {
          std::vector<int> s, t;
          for (int j = 0; j < k; ++j) s.push_back(j);
          for (int j = 0; j < ov; ++j) t.push_back(j);
          for (int j = 0; j < k2 - ov; ++j) t.push_back(5 + j);
          const ParitySupport ss(d, s), tt(d, t);
          const double e = expect(d, p, [&](InputView x) {
            return parity_eval(ss, x) * parity_eval(tt, x);
          });
          const double cov = e - std::pow(2 * p - 1, k + k2);
          EXPECT_NEAR(parity_covariance_analytic(p, k, k2, ov), cov, 1e-12);
        }
      }
    }
  }
}

TEST(HammingTail, UpperTailWithinBound) {
  // P(H >= eps' d) <= 2 exp(-(eps' - p)^2 d) for p < eps' <= 1/2.
  Rng rng(11);
  for (int d : {25, 50, 100}) {
    const double p = 0.25, eps = 0.5;
    const int n = 100000;
    int hits = 0;
    Input x(static_cast<std::size_t>(d));
    for (int i = 0; i < n; ++i) {
      sample_input_into(ProductMeasure(p, d), rng, x);
      hits += hamming_weight(x) >= eps * d;
    }
    const double bound = std::min(1.0, 2 * std::exp(-(eps - p) * (eps - p) * d));
    EXPECT_LE(static_cast<double>(hits) / n, bound + 3 * std::sqrt(bound * (1 - bound) / n));
  }
}

TEST(EmpiricalCorrelation, Examples) {
  Rng rng(0);
  const TargetFunction f(ParitySupport(4, {0, 2}));
  const auto m = ProductMeasure::uniform(4);
  EXPECT_DOUBLE_EQ(empirical_correlation(f, [&](InputView x) { return f(x); }, m,
                                         Sampling::exhaustive(), rng),
                   1.0);
  EXPECT_DOUBLE_EQ(empirical_correlation(f, [&](InputView x) { return -f(x); }, m,
                                         Sampling::exhaustive(), rng),
                   -1.0);
  const TargetFunction f1(ParitySupport(2, {0})), f2(ParitySupport(2, {1}));
  EXPECT_DOUBLE_EQ(empirical_correlation(f1, [&](InputView x) { return f2(x); },
                                         ProductMeasure::uniform(2), Sampling::exhaustive(),
                                         rng),
                   0.0);
  const TargetFunction big(ParitySupport(26, {0}));
  EXPECT_THROW(empirical_correlation(big, [](InputView) { return 1.0; },
                                     ProductMeasure::uniform(26), Sampling::exhaustive(), rng),
               CapacityError);
}

TEST(TargetFunction, JsonFragments) {
  const TargetFunction p(ParitySupport(5, {1, 3}));
  EXPECT_EQ(to_json(p).dump(), R"({"kind":"parity","support":[1,3]})");
  const TargetFunction g(
      HammingMixtureSpec(ParitySupport(5, {0}), ParitySupport(5, {4}), {3, 10}));
  EXPECT_EQ(to_json(g).dump(), R"({"S":[0],"T":[4],"eps":[3,10],"kind":"mixture"})");
}

}  // namespace
}  // namespace clparity
