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
#include "clparity/theory_verify.hpp"

#include <cmath>

#include <gtest/gtest.h>

namespace clparity {
namespace {

TEST(SpanHinge, CorrectedTableReproducesParity) {
  for (auto [d, k] : std::vector<std::pair<int, int>>{{4, 2}, {6, 2}, {8, 4}, {10, 4}}) {
    const Report r = verify_span_hinge(d, k);
    EXPECT_TRUE(r.pass) << d << " " << k << " " << r.metric;
  }
}

TEST(SpanHinge, PrintedTableMissesAtAllMinusOne) {
  // x = (-1, ..., -1): the top unit saturates and the printed row sums drift.
  const SpanConstructionA printed(4, 2, SpanTableA::kPrinted);
  const Input x(4, -1);
  EXPECT_GT(std::abs(printed.evaluate(x) - 1.0), 1e-3);
  EXPECT_FALSE(verify_span_hinge(4, 2, SpanTableA::kPrinted).pass);
}

TEST(SpanHinge, CoefficientBound) {
  const SpanConstructionA a(8, 2);
  EXPECT_LE(a.max_abs_coefficient(), 4.0 * 6);
}

TEST(SpanCov, Examples) {
  // k = 2: chi_{0,1} = 4 ReLU(m) - 3 ReLU(m + 1) + ReLU(m + 2), m = mean - 1 + 2/k.
  const SpanConstructionB b(2);
  EXPECT_EQ(b.coefficient(0), 4);
  EXPECT_EQ(b.coefficient(1), -3);
  EXPECT_EQ(b.coefficient(2), 1);
  for (int k : {2, 4, 6, 8}) EXPECT_TRUE(verify_span_cov(k).pass) << k;
  EXPECT_THROW(SpanConstructionB(3), HypothesisViolation);
}

TEST(ClosedForm, HingeAtUniform) {
  const auto g = closed_form_gradient(TheoremVariant::kHingeA, 4, 0.5, 10);
  EXPECT_EQ(g.w_support, 0.0);
  EXPECT_EQ(g.w_off, 0.0);
}

TEST(Verify, PopulationGradientsAndRecovery) {
  for (TheoremVariant v : {TheoremVariant::kHingeA, TheoremVariant::kCovB}) {
    EXPECT_TRUE(verify_population_gradients(v, 8, 2, 0.75, 4, 1).pass);
    EXPECT_TRUE(verify_support_recovery(v, 8, 2, 8, 1).pass);
  }
}

TEST(Verify, CovarianceFormula) {
  EXPECT_TRUE(verify_covariance_formula(6, {0.5, 0.8}).pass);
}

TEST(Verify, FiniteDifferences) {
  EXPECT_TRUE(verify_finite_differences(LossKind::kSquare, Activation::kRelu, 20, 3).pass);
  EXPECT_TRUE(verify_finite_differences(LossKind::kCovariance, Activation::kRamp, 20, 4).pass);
}

TEST(Verify, HammingTail) {
  EXPECT_TRUE(verify_hamming_tail(0.25, 50, 0.0, 0.5, 20000, 2).pass);
  EXPECT_THROW(verify_hamming_tail(0.6, 50, 0.0, 0.5, 10, 2), std::invalid_argument);
}

}  // namespace
}  // namespace clparity
