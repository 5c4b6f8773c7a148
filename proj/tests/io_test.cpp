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
#include "clparity/io.hpp"

#include <cmath>
#include <filesystem>
#include <stdexcept>

#include <gtest/gtest.h>

namespace clparity {
namespace {

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(std::int64_t{42}), "42");
  EXPECT_EQ(format_number(std::nan("")), "");
  const double v = 1.0 / 3.0;
  EXPECT_EQ(std::stod(format_number(v)), v);
}

TEST(Csv, RoundTrip) {
  CsvWriter w({"name", "x", "n"});
  w.row({std::string("a,b"), 0.25, std::int64_t{3}});
  w.row({std::string("say \"hi\""), std::nan(""), std::int64_t{-1}});
  const CsvTable t = CsvTable::parse(w.str());
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t.cell(0, t.column("name")), "a,b");
  EXPECT_EQ(t.number(0, t.column("x")), 0.25);
  EXPECT_EQ(t.cell(1, 0), "say \"hi\"");
  EXPECT_TRUE(std::isnan(t.number(1, 1)));
  EXPECT_EQ(t.number(1, 2), -1);
  EXPECT_THROW(t.column("missing"), std::out_of_range);
  EXPECT_THROW(w.row({0.0}), std::invalid_argument);
}

TEST(Files, AtomicWriteCreatesDirectories) {
  const auto dir = std::filesystem::temp_directory_path() / "clparity_io_test";
  std::filesystem::remove_all(dir);
  write_file_atomic(dir / "a" / "b.txt", "hello\n");
  EXPECT_EQ(read_file(dir / "a" / "b.txt"), "hello\n");
  write_file_atomic(dir / "a" / "b.txt", "again\n");
  EXPECT_EQ(read_file(dir / "a" / "b.txt"), "again\n");
  std::filesystem::remove_all(dir);
}

TEST(ParallelFor, VisitsEveryIndexAndRethrows) {
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(10, 3,
                            [](std::size_t i) {
                              if (i == 7) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}

TEST(Svg, LinePlot) {
  CsvWriter w({"step", "err", "arm"});
  for (int s = 1; s <= 4; ++s) {
    w.row({std::int64_t{s}, 1.0 / s, std::string("a")});
    w.row({std::int64_t{s}, 0.5, std::string("b")});
  }
  PlotSpec spec;
  spec.x = "step";
  spec.y = {"err"};
  spec.series = "arm";
  spec.log_x = true;
  spec.title = "t<1>";
  const std::string svg = svg_line_plot(CsvTable::parse(w.str()), spec);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("arm=a"), std::string::npos);
  EXPECT_NE(svg.find("arm=b"), std::string::npos);
  EXPECT_NE(svg.find("t&lt;1&gt;"), std::string::npos);
  EXPECT_EQ(svg.find("nan"), std::string::npos);
}

}  // namespace
}  // namespace clparity
