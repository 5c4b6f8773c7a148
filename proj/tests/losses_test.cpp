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

#include "clparity/losses.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "clparity/evaluation.hpp"
#include "clparity/network.hpp"

namespace clparity {
namespace {

TEST(Hinge, Examples) {
  EXPECT_EQ(hinge(1, 1), 0);
  EXPECT_EQ(hinge(1, 0), 1);
  EXPECT_EQ(hinge(-1, 0.5), 1.5);
}

TEST(Square, Examples) {
  EXPECT_EQ(square(1, 1), 0);
  EXPECT_EQ(square(-1, 1), 4);
  EXPECT_EQ(square(1, 0), 1);
}

TEST(Covariance, Examples) {
  EXPECT_EQ(covariance_loss(1.5, 1.25, {0.5, 0.25}), 0);
  EXPECT_EQ(covariance_loss(1, 0.3, {0.2, 0.3}), 1);
  // Uniform measure, f = prediction = chi_S: both means are 0.
  for (double y : {-1.0, 1.0}) EXPECT_EQ(covariance_loss(y, y, {0, 0}), 0);
}

TEST(Covariance, ShiftInvariance) {
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const double y = rng.bernoulli(0.5) ? 1 : -1;
    const double pred = rng.uniform(-2, 2), c = rng.uniform(-5, 5);
    const CovContext ctx{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const CovContext shifted{ctx.mean_label, ctx.mean_pred + c};
    EXPECT_NEAR(covariance_loss(y, pred, ctx), covariance_loss(y, pred + c, shifted), 1e-12);
  }
}

TEST(Losses, NonNegativeAndZeroAtTarget) {
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    const double y = rng.bernoulli(0.5) ? 1 : -1;
    const double pred = rng.uniform(-3, 3);
    const CovContext ctx{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    for (LossKind k : {LossKind::kHinge, LossKind::kSquare, LossKind::kCovariance}) {
      EXPECT_GE(loss_value(k, y, pred, ctx), 0.0);
    }
    EXPECT_EQ(hinge(y, y), 0);
    EXPECT_EQ(square(y, y), 0);
  }
}

TEST(Losses, Names) {
  for (LossKind k : {LossKind::kHinge, LossKind::kSquare, LossKind::kCovariance}) {
    EXPECT_EQ(parse_loss(loss_name(k)), k);
  }
  EXPECT_THROW(parse_loss("logistic"), ConfigError);
}

NetworkParams constant_net(int d, double value) {
  NetworkParams p;
  p.activation = Activation::kRelu;
  p.a = Eigen::VectorXd::Constant(1, value >= 0 ? 1.0 : -1.0);
  p.b = Eigen::VectorXd::Constant(1, std::abs(value));
  p.w = Eigen::MatrixXd::Zero(1, d);
  return p;
}

TEST(GeneralizationError, Examples) {
  Rng rng(3);
  const TargetFunction f(ParitySupport::prefix(6, 3));
  // NN == 0: sign(0) = +1 misclassifies exactly the -1 half.
  EXPECT_DOUBLE_EQ(generalization_error(constant_net(6, 0), f, ErrorMode::classification(),
                                        Sampling::exhaustive(), rng),
                   0.5);
  // A network computing chi_{0} exactly: x0 = relu(x0) - relu(-x0).
  NetworkParams p;
  p.activation = Activation::kRelu;
  p.a = Eigen::Vector2d(1, -1);
  p.b = Eigen::Vector2d::Zero();
  p.w = Eigen::MatrixXd::Zero(2, 4);
  p.w(0, 0) = 1;
  p.w(1, 0) = -1;
  const TargetFunction g(ParitySupport(4, {0}));
  EXPECT_EQ(generalization_error(p, g, ErrorMode::classification(), Sampling::exhaustive(), rng), 0);
  EXPECT_EQ(generalization_error(p, g, ErrorMode::of_loss(LossKind::kSquare),
                                 Sampling::exhaustive(), rng),
            0);
  EXPECT_EQ(generalization_error(p, g, ErrorMode::of_loss(LossKind::kHinge),
                                 Sampling::exhaustive(), rng),
            0);
}

TEST(GeneralizationError, RandomInitNearHalf) {
  Rng rng(4);
  InitSpec s;
  const auto p = init(s, 32, 16, 4, rng);
  const TargetFunction f(ParitySupport::prefix(16, 4));
  const double e = generalization_error(p, f, ErrorMode::classification(),
                                        Sampling::exhaustive(), rng);
  EXPECT_NEAR(e, 0.5, 0.1);
  EXPECT_THROW(generalization_error(constant_net(26, 0), TargetFunction(ParitySupport(26, {0})),
                                    ErrorMode::classification(), Sampling::exhaustive(), rng),
               CapacityError);
}

}  // namespace
}  // namespace clparity
