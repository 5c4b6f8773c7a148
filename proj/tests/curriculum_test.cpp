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

#include "clparity/curriculum.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "clparity/training.hpp"

namespace clparity {
namespace {

bool same(double x, double y) { return x == y || (std::isnan(x) && std::isnan(y)); }

TEST(BiasAt, Examples) {
  const auto r = CurriculumSpec::r_cl({100}, {0.95, 0.5});
  EXPECT_EQ(r.bias_at(100, 200), 0.95);
  EXPECT_EQ(r.bias_at(101, 200), 0.5);
  EXPECT_EQ(r.bias_at(1, 200), 0.95);
  const auto c = CurriculumSpec::c_cl(1.0, 0.5);
  EXPECT_DOUBLE_EQ(c.bias_at(10, 10), 0.5);
  EXPECT_DOUBLE_EQ(c.bias_at(5, 10), 0.75);
  EXPECT_EQ(CurriculumSpec::none().bias_at(3, 10), 0.5);
}

TEST(BiasAt, Errors) {
  const auto r = CurriculumSpec::r_cl({100}, {0.95, 0.5});
  EXPECT_THROW(r.bias_at(0, 200), std::out_of_range);
  EXPECT_THROW(r.bias_at(201, 200), std::out_of_range);
  EXPECT_THROW(CurriculumSpec::r_cl({5, 5}, {0.1, 0.2, 0.3}), std::invalid_argument);
  EXPECT_THROW(CurriculumSpec::r_cl({5}, {0.1}), std::invalid_argument);
  EXPECT_THROW(CurriculumSpec::r_cl({}, {1.5}), std::invalid_argument);
  EXPECT_THROW(CurriculumSpec::c_cl(-0.1, 0.5), std::invalid_argument);
  EXPECT_THROW(r.check_horizon(100), std::invalid_argument);
}

TEST(BiasAt, MonotoneAndInRange) {
  const auto r = CurriculumSpec::r_cl({10, 20, 30}, {0.9, 0.8, 0.6, 0.5});
  const auto c = CurriculumSpec::c_cl(0.975, 0.5);
  double pr = 1, pc = 1;
  for (int t = 1; t <= 40; ++t) {
    const double a = r.bias_at(t, 40), b = c.bias_at(t, 40);
    EXPECT_LE(a, pr);
    EXPECT_LE(b, pc);
    EXPECT_GE(b, 0.0);
    EXPECT_LE(b, 1.0);
    pr = a;
    pc = b;
  }
}

TEST(Curriculum, SinglePhaseHalfEqualsNone) {
  TrainConfig c;
  c.d = 10;
  c.k = 2;
  c.hidden = 8;
  c.target = TargetFunction(ParitySupport::prefix(10, 2));
  c.batch = 32;
  c.steps = 40;
  c.eval_every = 5;
  c.curriculum = CurriculumSpec::none();
  const auto a = train(c, 9);
  c.curriculum = CurriculumSpec::r_cl({}, {0.5});
  const auto b = train(c, 9);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_TRUE(same(a.rows[i].train_loss, b.rows[i].train_loss)) << i;
    EXPECT_TRUE(same(a.rows[i].test_err, b.rows[i].test_err)) << i;
  }
  EXPECT_EQ(a.final_params.w, b.final_params.w);
}

TEST(Curriculum, Json) {
  EXPECT_EQ(to_json(CurriculumSpec::none()).dump(), R"({"kind":"none"})");
  EXPECT_EQ(to_json(CurriculumSpec::c_cl(1, 0.5)).dump(),
            R"({"kind":"c_cl","p0":1.0,"pT":0.5})");
}

}  // namespace
}  // namespace clparity
