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

#include "clparity/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "clparity/boolean_data.hpp"
#include "clparity/gradients.hpp"

namespace clparity {
namespace {

NetworkParams single(double a, std::vector<double> w, double b, Activation act) {
  NetworkParams p;
  p.activation = act;
  p.a = Eigen::VectorXd::Constant(1, a);
  p.b = Eigen::VectorXd::Constant(1, b);
  p.w = Eigen::MatrixXd(1, static_cast<Eigen::Index>(w.size()));
  for (std::size_t j = 0; j < w.size(); ++j) p.w(0, static_cast<Eigen::Index>(j)) = w[j];
  return p;
}

TEST(Forward, Examples) {
  const auto p = single(1, {0, 0, 0}, 0.5, Activation::kRamp);
  for (int idx = 0; idx < 8; ++idx) {
    Input x(3);
    cube_point(static_cast<std::uint64_t>(idx), x);
    EXPECT_DOUBLE_EQ(forward(p, x), 0.5);
  }
  const auto r = single(1, {1, 0}, 0, Activation::kRelu);
  EXPECT_DOUBLE_EQ(forward(r, Input{1, -1}), 1.0);
  EXPECT_DOUBLE_EQ(forward(r, Input{-1, 1}), 0.0);
  EXPECT_DOUBLE_EQ(forward(single(2, {0}, 3, Activation::kRamp), Input{1}), 2.0);
  EXPECT_THROW(forward(r, Input{1, 1, 1}), DimensionMismatch);
}

TEST(ActivationDerivative, KinkConventions) {
  EXPECT_EQ(activation_derivative(0.5, Activation::kRamp), 1.0);
  EXPECT_EQ(activation_derivative(1.5, Activation::kRamp), 0.0);
  EXPECT_EQ(activation_derivative(0.0, Activation::kRamp), 1.0);
  EXPECT_EQ(activation_derivative(1.0, Activation::kRamp), 1.0);
  EXPECT_EQ(activation_derivative(0.0, Activation::kRelu), 0.0);
  EXPECT_EQ(activation_derivative(1e-300, Activation::kRelu), 1.0);
}

TEST(Init, HingeGridPrintedScaling) {
  // b_lm for l = 0, m = -1 at d = 4, k = 2 is -4.5; the printed placement
  // gives -4.5/5 + 1/2 = -0.4.
  EXPECT_DOUBLE_EQ(hinge_grid_offset(0, -1, 4, 2), -4.5);
  EXPECT_NEAR(hinge_grid_bias(0, -1, 4, 2, HingeBiasScaling::kPrinted), -0.4, 1e-15);
  EXPECT_NEAR(hinge_grid_bias(0, -1, 4, 2, HingeBiasScaling::kActiveRange), 0.05, 1e-15);
}

TEST(Init, HingeGridSizeAndRange) {
  for (auto [d, k] : std::vector<std::pair<int, int>>{{4, 2}, {8, 2}, {12, 6}}) {
    const auto g = hinge_bias_grid(d, k, HingeBiasScaling::kActiveRange);
    EXPECT_EQ(g.size(), static_cast<std::size_t>((d + 1) * (d - k + 2)));
    for (double b : g) {
      EXPECT_GT(b, 0.0);
      EXPECT_LE(b, 1.0);
    }
  }
}

TEST(Init, CovGrid) {
  EXPECT_EQ(cov_bias_grid(2), (std::vector<double>{1, 2, 3}));
}

TEST(Init, Shapes) {
  Rng rng(1);
  for (InitScheme s : {InitScheme::kUniformStandard, InitScheme::kCovTheory}) {
    InitSpec spec;
    spec.scheme = s;
    const auto p = init(spec, 3, 2, 2, rng);
    EXPECT_EQ(p.a.size(), 3);
    EXPECT_EQ(p.b.size(), 3);
    EXPECT_EQ(p.w.rows(), 3);
    EXPECT_EQ(p.w.cols(), 2);
  }
  InitSpec h;
  h.scheme = InitScheme::kHingeTheory;
  const auto p = init(h, 3, 4, 2, rng);
  EXPECT_EQ(p.w.rows(), 3);
  EXPECT_EQ(p.w.cols(), 4);
}

TEST(Init, HypothesisViolations) {
  Rng rng(1);
  InitSpec h;
  h.scheme = InitScheme::kHingeTheory;
  EXPECT_THROW(init(h, 4, 8, 3, rng), HypothesisViolation);
  EXPECT_THROW(init(h, 4, 8, 6, rng), HypothesisViolation);
  InitSpec c;
  c.scheme = InitScheme::kCovTheory;
  EXPECT_THROW(init(c, 4, 8, 3, rng), HypothesisViolation);
}

TEST(Init, TheoryOutputBounds) {
  Rng rng(2);
  InitSpec h;
  h.scheme = InitScheme::kHingeTheory;
  InitSpec c;
  c.scheme = InitScheme::kCovTheory;
  for (int d : {4, 8, 12}) {
    const auto ph = init(h, 16, d, 2, rng);
    const auto pc = init(c, 16, d, 2, rng);
    EXPECT_TRUE(ph.w.isZero(0));
    EXPECT_TRUE(pc.w.isZero(0));
    for_each_point(ProductMeasure::uniform(d), [&](InputView x, double) {
      EXPECT_LT(std::abs(forward(ph, x)), 1.0);
      EXPECT_LT(std::abs(forward(pc, x)), 0.25);
    });
  }
}

TEST(Init, UniformStandardRange) {
  Rng rng(3);
  InitSpec s;
  const int d = 49;
  const auto p = init(s, 50, d, 1, rng);
  const double lim = 1.0 / 7.0;
  EXPECT_LE(p.w.cwiseAbs().maxCoeff(), lim);
  EXPECT_LE(p.a.cwiseAbs().maxCoeff(), lim);
  EXPECT_LE(p.b.cwiseAbs().maxCoeff(), lim);
  EXPECT_GT(p.w.cwiseAbs().maxCoeff(), 0.9 * lim);
}

TEST(Forward, PermutationEquivariance) {
  Rng rng(4);
  InitSpec s;
  const int d = 7;
  const auto p = init(s, 5, d, 1, rng);
  std::vector<int> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  std::swap(perm[0], perm[3]);
  NetworkParams q = p;
  for (int j = 0; j < d; ++j) q.w.col(perm[static_cast<std::size_t>(j)]) = p.w.col(j);
  for (int t = 0; t < 50; ++t) {
    const Input x = sample_input(ProductMeasure::uniform(d), rng);
    Input y(d);
    for (int j = 0; j < d; ++j) y[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])] = x[static_cast<std::size_t>(j)];
    EXPECT_NEAR(forward(p, x), forward(q, y), 1e-14);
  }
}

TEST(Backward, InactiveHinge) {
  const auto p = single(2, {0, 0}, 0.5, Activation::kRamp);  // NN = 1
  const auto g = backward(p, LossKind::kHinge, 1.0, {}, Input{1, 1});
  EXPECT_EQ(g.max_abs(), 0.0);
  const auto p2 = single(4, {0, 0}, 0.5, Activation::kRamp);  // margin 2
  EXPECT_EQ(backward(p2, LossKind::kHinge, 1.0, {}, Input{1, -1}).max_abs(), 0.0);
}

TEST(Backward, HingeAtTheoryInit) {
  // Single ramp unit, w = 0, preactivation b in [0, 1]: dL/dw_j = -a y x_j.
  const double a = 0.5;
  const auto p = single(a, {0, 0, 0, 0}, 0.3, Activation::kRamp);
  const TargetFunction t(ParitySupport::prefix(4, 2));
  for_each_point(ProductMeasure::uniform(4), [&](InputView x, double) {
    const double y = t(x);
    const auto g = backward(p, LossKind::kHinge, y, {}, x);
    for (int j = 0; j < 4; ++j) EXPECT_DOUBLE_EQ(g.w(0, j), -a * y * x[static_cast<std::size_t>(j)]);
  });
}

TEST(Checkpoint, RoundTrip) {
  Rng rng(5);
  InitSpec s;
  const auto p = init(s, 4, 3, 1, rng);
  const auto q = network_from_json(nlohmann::json::parse(to_json(p).dump()));
  EXPECT_EQ(p.a, q.a);
  EXPECT_EQ(p.b, q.b);
  EXPECT_EQ(p.w, q.w);
  EXPECT_EQ(p.activation, q.activation);
  auto j = to_json(p);
  j["N"] = 5;
  EXPECT_THROW(network_from_json(j), DimensionMismatch);
}

}  // namespace
}  // namespace clparity
