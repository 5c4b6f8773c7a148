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
#include "clparity/experiments.hpp"

#include <cmath>
#include <filesystem>

#include <gtest/gtest.h>

namespace clparity {
namespace {

TEST(PowerFit, RecoversExponent) {
  std::vector<double> x = {25, 50, 75, 100}, y;
  for (double v : x) y.push_back(3.0 * std::pow(v, 2.5));
  const PowerFit f = fit_power_law(x, y);
  EXPECT_NEAR(f.slope, 2.5, 1e-12);
  EXPECT_NEAR(std::exp(f.intercept), 3.0, 1e-9);
  EXPECT_NEAR(f.r2, 1.0, 1e-12);
  EXPECT_EQ(fit_power_law({1, 2}, {std::nan(""), 4}).points, 1);
}

TEST(Inversions, SkipsNan) {
  EXPECT_EQ(inversions({1, 2, std::nan(""), 1.5, 3}), 1);
  EXPECT_EQ(inversions({}), 0);
}

std::vector<LogRow> rows_of(const std::vector<double>& errs, std::int64_t stride) {
  std::vector<LogRow> rows;
  for (std::size_t i = 0; i < errs.size(); ++i) {
    LogRow r;
    r.step = static_cast<std::int64_t>(i) * stride;
    r.test_err = errs[i];
    rows.push_back(r);
  }
  return rows;
}

TEST(CurveShape, DropAndRises) {
  const auto rows = rows_of({0.5, 0.5, 0.5, 0.0, 0.0, 0.0}, 100);
  EXPECT_DOUBLE_EQ(trailing_average(rows, 1)[3], 0.0);
  EXPECT_DOUBLE_EQ(trailing_average(rows, 200)[3], 0.25);
  const CurveShape s = curve_shape(rows, 1, 100, 0.02);
  EXPECT_DOUBLE_EQ(s.max_drop, 0.5);
  EXPECT_EQ(s.rises, 0);
  EXPECT_DOUBLE_EQ(s.start, 0.5);
  EXPECT_DOUBLE_EQ(s.end, 0.0);
  const CurveShape bumpy = curve_shape(rows_of({0.5, 0.2, 0.4, 0.1}, 10), 1, 10, 0.02);
  EXPECT_EQ(bumpy.rises, 1);
}

TEST(Fig4Grid, Endpoints) {
  const auto g = fig4_grid();
  EXPECT_EQ(g.front(), 0.001);
  EXPECT_EQ(g.back(), 0.999);
  EXPECT_EQ(g.size(), 21u);
}

TEST(RunPoints, WritesAndResumes) {
  const auto dir = std::filesystem::temp_directory_path() / "clparity_points_test";
  std::filesystem::remove_all(dir);
  TrainConfig c;
  c.d = 8;
  c.k = 2;
  c.hidden = 4;
  c.target = TargetFunction(ParitySupport::prefix(8, 2));
  c.batch = 8;
  c.steps = 20;
  c.eval_every = 5;
  c.test_samples = 64;
  ExperimentOptions opt;
  opt.out = dir;
  std::vector<PointTask> tasks = {{"a", {{"x", 1}}, c, 1}, {"b", {{"x", 2}}, c, 2}};
  const auto first = run_points("unit", tasks, opt);
  ASSERT_EQ(first.size(), 2u);
  EXPECT_FALSE(first[0].resumed);
  const std::string csv = read_file(dir / "unit" / "a" / "run.csv");
  EXPECT_EQ(csv.rfind("x,seed,step,bias,train_loss,train_err,test_err\n", 0), 0u);
  const auto second = run_points("unit", tasks, opt);
  EXPECT_TRUE(second[0].resumed);
  EXPECT_TRUE(second[1].resumed);
  EXPECT_EQ(second[1].record.final_params.w, first[1].record.final_params.w);
  ASSERT_EQ(second[0].record.rows.size(), first[0].record.rows.size());
  EXPECT_EQ(second[0].record.rows.back().test_err, first[0].record.rows.back().test_err);
  // A changed config is rerun, not resumed.
  tasks[0].config.steps = 25;
  EXPECT_FALSE(run_points("unit", tasks, opt)[0].resumed);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace clparity
