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

// Named sweeps: the curriculum figures and the Hamming-mixture contrast.
//
// Layout: <out>/<experiment>/<point>/{run.csv, run.json} plus
// <out>/<experiment>/{summary.csv, plot.svg}. A point whose run.json already
// records the same config, seed and timing flag is loaded instead of rerun.

#ifndef CLPARITY_EXPERIMENTS_HPP_
#define CLPARITY_EXPERIMENTS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "clparity/io.hpp"
#include "clparity/rng.hpp"
#include "clparity/training.hpp"

namespace clparity {

enum class Scale { kDesk, kPaper };

struct ExperimentOptions {
  std::filesystem::path out = "out";
  std::uint64_t seed = 0;
  Scale scale = Scale::kDesk;
  int jobs = 1;
  int seeds = 0;  // 0: experiment default
  bool timing = false;
  std::ostream* log = nullptr;  // one line per finished run
};

// One training run of a sweep.
struct PointTask {
  std::string id;             // directory name, unique within the experiment
  nlohmann::json provenance;  // flat key/value columns for the CSVs
  TrainConfig config;
  std::uint64_t seed = 0;
};

struct PointResult {
  PointTask task;
  RunRecord record;
  bool resumed = false;
};

namespace detail {

inline const std::vector<std::string>& run_columns() {
  static const std::vector<std::string> cols = {"step", "bias", "train_loss",
                                                "train_err", "test_err"};
  return cols;
}

inline std::string provenance_cell(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number()) return format_number(v.get<double>());
  return v.dump();
}

inline std::string run_csv(const PointTask& task, const RunRecord& rec, bool timing) {
  std::vector<std::string> header;
  std::vector<CsvWriter::Cell> prefix;
  for (const auto& [key, value] : task.provenance.items()) {
    header.push_back(key);
    prefix.emplace_back(provenance_cell(value));
  }
  header.push_back("seed");
  prefix.emplace_back(std::to_string(task.seed));
  for (const auto& c : run_columns()) header.push_back(c);
  if (timing) header.push_back("elapsed_ms");
  CsvWriter w(header);
  for (const LogRow& r : rec.rows) {
    std::vector<CsvWriter::Cell> cells = prefix;
    cells.emplace_back(r.step);
    cells.emplace_back(r.bias);
    cells.emplace_back(r.train_loss);
    cells.emplace_back(r.train_err);
    cells.emplace_back(r.test_err);
    if (timing) cells.emplace_back(r.elapsed_ms);
    w.row(cells);
  }
  return w.str();
}

inline nlohmann::json run_json(const PointTask& task, const RunRecord& rec,
                               bool timing) {
  nlohmann::json j;
  j["point"] = task.id;
  j["seed"] = task.seed;
  j["timing"] = timing;
  j["provenance"] = task.provenance;
  j["config"] = rec.config;
  j["steps_run"] = rec.steps_run;
  j["phase_steps"] = rec.phase_steps;
  j["convergence_step"] = rec.convergence_step ? nlohmann::json(*rec.convergence_step)
                                               : nlohmann::json(nullptr);
  j["final_test_error"] = std::isnan(rec.final_test_error)
                              ? nlohmann::json(nullptr)
                              : nlohmann::json(rec.final_test_error);
  j["final_params"] = to_json(rec.final_params);
  j["complete"] = true;
  return j;
}

// Rebuilds a record from a finished point directory, if it matches.
inline std::optional<RunRecord> load_point(const std::filesystem::path& dir,
                                           const PointTask& task, bool timing) {
  const auto json_path = dir / "run.json";
  const auto csv_path = dir / "run.csv";
  if (!std::filesystem::exists(json_path) || !std::filesystem::exists(csv_path)) {
    return std::nullopt;
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(json_path));
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (!j.value("complete", false) || j.value("timing", !timing) != timing ||
      j.value("seed", task.seed + 1) != task.seed ||
      j.value("config", nlohmann::json()) != to_json(task.config) ||
      j.value("provenance", nlohmann::json()) != task.provenance) {
    return std::nullopt;
  }
  RunRecord rec;
  rec.seed = task.seed;
  rec.config = j["config"];
  rec.steps_run = j["steps_run"].get<std::int64_t>();
  rec.phase_steps = j["phase_steps"].get<std::vector<std::int64_t>>();
  if (!j["convergence_step"].is_null()) {
    rec.convergence_step = j["convergence_step"].get<std::int64_t>();
  }
  rec.final_test_error = j["final_test_error"].is_null()
                             ? std::nan("")
                             : j["final_test_error"].get<double>();
  rec.final_params = network_from_json(j["final_params"]);
  const CsvTable t = CsvTable::parse(read_file(csv_path));
  const int c_step = t.column("step"), c_bias = t.column("bias"),
            c_loss = t.column("train_loss"), c_err = t.column("train_err"),
            c_test = t.column("test_err");
  const int c_ms = timing ? t.column("elapsed_ms") : -1;
  for (std::size_t r = 0; r < t.size(); ++r) {
    LogRow row;
    row.step = static_cast<std::int64_t>(t.number(r, c_step));
    row.bias = t.number(r, c_bias);
    row.train_loss = t.number(r, c_loss);
    row.train_err = t.number(r, c_err);
    row.test_err = t.number(r, c_test);
    if (c_ms >= 0) row.elapsed_ms = t.number(r, c_ms);
    rec.rows.push_back(row);
  }
  return rec;
}

}  // namespace detail

// Runs (or resumes) every task on the worker pool. Results keep task order.
inline std::vector<PointResult> run_points(const std::string& experiment,
                                           std::vector<PointTask> tasks,
                                           const ExperimentOptions& opt) {
  std::vector<PointResult> out(tasks.size());
  std::mutex log_mu;
  const auto root = opt.out / experiment;
  parallel_for(tasks.size(), opt.jobs, [&](std::size_t i) {
    PointResult& res = out[i];
    res.task = std::move(tasks[i]);
    TrainConfig cfg = res.task.config;
    cfg.record_timing = opt.timing;
    res.task.config = cfg;
    const auto dir = root / res.task.id;
    if (auto loaded = detail::load_point(dir, res.task, opt.timing)) {
      res.record = std::move(*loaded);
      res.resumed = true;
    } else {
      res.record = train(cfg, res.task.seed);
      write_file_atomic(dir / "run.csv",
                        detail::run_csv(res.task, res.record, opt.timing));
      write_file_atomic(dir / "run.json",
                        detail::run_json(res.task, res.record, opt.timing).dump(2) + "\n");
    }
    if (opt.log) {
      std::lock_guard<std::mutex> lock(log_mu);
      *opt.log << experiment << "/" << res.task.id << " seed=" << res.task.seed
               << " steps=" << res.record.steps_run << " test_err="
               << format_number(res.record.final_test_error) << " converged="
               << (res.record.convergence_step
                       ? std::to_string(*res.record.convergence_step)
                       : std::string("no"))
               << (res.resumed ? " (resumed)" : "") << "\n";
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Curve shape helpers.

// Trailing moving average over `window` steps of the (step, value) samples.
inline std::vector<double> trailing_average(const std::vector<LogRow>& rows,
                                            std::int64_t window) {
  std::vector<double> out(rows.size());
  std::size_t lo = 0;
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    sum += rows[i].test_err;
    ++n;
    while (rows[lo].step <= rows[i].step - window) {
      sum -= rows[lo].test_err;
      --n;
      ++lo;
    }
    out[i] = sum / static_cast<double>(n);
  }
  return out;
}

struct CurveShape {
  // Largest drop of the smoothed test error within any `span` steps.
  double max_drop = 0.0;
  // Smoothed test error at the start and end.
  double start = 0.0;
  double end = 0.0;
  // Number of rises of the smoothed curve larger than `tolerance`.
  int rises = 0;
};

inline CurveShape curve_shape(const std::vector<LogRow>& rows, std::int64_t window,
                              std::int64_t span, double tolerance) {
  CurveShape s;
  if (rows.empty()) return s;
  const auto sm = trailing_average(rows, window);
  s.start = sm.front();
  s.end = sm.back();
  double best = sm.front();
  for (std::size_t i = 0; i < sm.size(); ++i) {
    for (std::size_t j = i + 1; j < sm.size() && rows[j].step - rows[i].step <= span;
         ++j) {
      s.max_drop = std::max(s.max_drop, sm[i] - sm[j]);
    }
    if (sm[i] > best + tolerance) ++s.rises;
    best = std::min(best, sm[i]);
  }
  return s;
}

// Least squares fit of log T = c log d + b.
struct PowerFit {
  double slope = std::nan("");
  double intercept = std::nan("");
  double r2 = std::nan("");
  int points = 0;
};

inline PowerFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  PowerFit f;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0 && y[i] > 0 && !std::isnan(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  f.points = static_cast<int>(lx.size());
  if (lx.size() < 2) return f;
  const double n = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0) return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

// Count of strict decreases along a sequence (NaN entries skipped).
inline int inversions(const std::vector<double>& v) {
  int n = 0;
  double prev = std::nan("");
  for (double x : v) {
    if (std::isnan(x)) continue;
    if (!std::isnan(prev) && x < prev) ++n;
    prev = x;
  }
  return n;
}

// ---------------------------------------------------------------------------
// Figure 2: 2-CL, C-CL and no curriculum on one parity.

struct Fig2Panel {
  std::string id;
  std::string label;
  std::vector<PointResult> runs;
  // Per seed: first logged step with uniform test error <= 0.05, or -1.
  std::vector<std::int64_t> reach_step;
  // Per seed: smallest logged uniform test error.
  std::vector<double> min_test_error;
  std::vector<CurveShape> shapes;
};

struct Fig2Result {
  std::int64_t budget = 0;
  std::vector<Fig2Panel> panels;
  const Fig2Panel* panel(const std::string& id) const {
    for (const auto& p : panels) {
      if (p.id == id) return &p;
    }
    return nullptr;
  }
};

struct Fig2Setup {
  int d = 50, k = 10, hidden = 100;
  Eigen::Index batch = 1024;
  double lr = 0.01;
  std::int64_t budget = 50000;
  std::int64_t eval_every = 100;
  int seeds = 5;
};

inline Fig2Setup fig2_setup(Scale s) {
  Fig2Setup f;
  if (s == Scale::kPaper) {
    f.d = 100;
    f.k = 20;
    f.budget = 64000;
    f.eval_every = 250;
  }
  return f;
}

inline std::vector<std::string> fig2_panel_ids() {
  return {"p1_0.975", "p1_0.95", "p1_0.05", "ccl", "none"};
}

inline TrainConfig fig2_config(const Fig2Setup& f, const std::string& panel) {
  TrainConfig c;
  c.d = f.d;
  c.k = f.k;
  c.hidden = f.hidden;
  c.target = TargetFunction(ParitySupport::prefix(f.d, f.k));
  c.loss = LossKind::kSquare;
  c.schedule = ScheduleSpec::plain(f.lr);
  c.batch = f.batch;
  c.steps = f.budget;
  c.eval_every = f.eval_every;
  auto two_phase = [&](double p1) {
    c.curriculum = CurriculumSpec::r_cl({1}, {p1, 0.5});
    c.advance_on_convergence = true;
    c.stop_test_error = 0.0;
  };
  if (panel == "p1_0.975") {
    two_phase(39.0 / 40.0);
  } else if (panel == "p1_0.95") {
    two_phase(19.0 / 20.0);
  } else if (panel == "p1_0.05") {
    two_phase(1.0 / 20.0);
  } else if (panel == "ccl") {
    c.curriculum = CurriculumSpec::c_cl(39.0 / 40.0, 0.5);
    c.stop_test_error = 0.0;
  } else if (panel == "none") {
    c.curriculum = CurriculumSpec::none();
  } else {
    throw std::invalid_argument("fig2: unknown panel " + panel);
  }
  return c;
}

inline Fig2Result run_fig2(const ExperimentOptions& opt,
                           std::vector<std::string> panels = {}) {
  const Fig2Setup f = fig2_setup(opt.scale);
  if (panels.empty()) panels = fig2_panel_ids();
  const int seeds = opt.seeds > 0 ? opt.seeds : f.seeds;
  std::vector<PointTask> tasks;
  for (const auto& panel : panels) {
    for (int s = 0; s < seeds; ++s) {
      PointTask t;
      t.id = panel + "_s" + std::to_string(s);
      t.config = fig2_config(f, panel);
      t.seed = Rng::derive_seed(opt.seed, static_cast<std::uint64_t>(s));
      t.provenance = {{"experiment", "fig2"}, {"panel", panel},   {"d", f.d},
                      {"k", f.k},             {"hidden", f.hidden}, {"batch", f.batch},
                      {"lr", f.lr},           {"budget", f.budget}};
      tasks.push_back(std::move(t));
    }
  }
  auto results = run_points("fig2", std::move(tasks), opt);

  Fig2Result out;
  out.budget = f.budget;
  CsvWriter summary({"experiment", "panel", "seed", "d", "k", "hidden", "batch", "lr",
                     "budget", "steps_run", "phase1_step", "convergence_step",
                     "reach_0.05_step", "min_test_err", "final_test_err",
                     "smoothed_max_drop_2000", "smoothed_rises"});
  // Mean test error per panel and logged step, for the plot.
  CsvWriter curves({"panel", "step", "test_err", "train_err"});
  std::size_t idx = 0;
  for (const auto& panel : panels) {
    Fig2Panel p;
    p.id = panel;
    std::map<std::int64_t, std::pair<double, int>> test_mean, train_mean;
    for (int s = 0; s < seeds; ++s, ++idx) {
      PointResult& r = results[idx];
      std::int64_t reach = -1;
      double best = 1.0;
      for (const LogRow& row : r.record.rows) {
        if (std::isnan(row.test_err)) continue;
        best = std::min(best, row.test_err);
        if (reach < 0 && row.test_err <= 0.05) reach = row.step;
        auto& tm = test_mean[row.step];
        tm.first += row.test_err;
        tm.second += 1;
        if (!std::isnan(row.train_err)) {
          auto& trm = train_mean[row.step];
          trm.first += row.train_err;
          trm.second += 1;
        }
      }
      const CurveShape shape = curve_shape(r.record.rows, 200, 2000, 0.02);
      summary.row({"fig2", panel, std::to_string(r.task.seed),
                   std::int64_t{f.d}, std::int64_t{f.k}, std::int64_t{f.hidden},
                   std::int64_t{f.batch}, f.lr, f.budget, r.record.steps_run,
                   r.record.phase_steps.size() > 1 ? r.record.phase_steps[0]
                                                   : std::int64_t{-1},
                   r.record.convergence_step.value_or(-1), reach, best,
                   r.record.final_test_error, shape.max_drop,
                   std::int64_t{shape.rises}});
      p.reach_step.push_back(reach);
      p.min_test_error.push_back(best);
      p.shapes.push_back(shape);
      p.runs.push_back(std::move(r));
    }
    for (const auto& [step, acc] : test_mean) {
      const auto it = train_mean.find(step);
      const double tr = it == train_mean.end() ? std::nan("")
                                               : it->second.first / it->second.second;
      curves.row({panel, step, acc.first / acc.second, tr});
    }
    out.panels.push_back(std::move(p));
  }
  const auto root = opt.out / "fig2";
  write_file_atomic(root / "summary.csv", summary.str());
  write_file_atomic(root / "curves.csv", curves.str());
  write_file_atomic(root / "plot.svg",
                    svg_line_plot(CsvTable::parse(curves.str()),
                                  {"step", {"test_err"}, "panel", false, false,
                                   "uniform test error (mean over seeds)"}));
  return out;
}

// ---------------------------------------------------------------------------
// Convergence-time sweeps shared by figures 3 and 4.

struct ConvergencePoint {
  std::vector<std::int64_t> total;  // T1 + T2 per seed; -1 if censored
  std::vector<std::int64_t> t1;
  std::vector<std::int64_t> t2;

  int censored() const {
    return static_cast<int>(std::count(total.begin(), total.end(), -1));
  }
  int finished() const { return static_cast<int>(total.size()) - censored(); }

  static double mean_of(const std::vector<std::int64_t>& v) {
    double s = 0;
    int n = 0;
    for (auto x : v) {
      if (x >= 0) {
        s += static_cast<double>(x);
        ++n;
      }
    }
    return n ? s / n : std::nan("");
  }
  double mean_total() const { return mean_of(total); }
  double mean_t1() const { return mean_of(t1); }
  double mean_t2() const { return mean_of(t2); }
};

inline ConvergencePoint collect(const std::vector<PointResult>& runs, std::size_t from,
                                std::size_t n) {
  ConvergencePoint p;
  for (std::size_t i = from; i < from + n; ++i) {
    const RunRecord& r = runs[i].record;
    if (r.convergence_step) {
      const std::int64_t t1 = r.phase_steps.size() > 1 ? r.phase_steps[0] : 0;
      p.total.push_back(*r.convergence_step);
      p.t1.push_back(t1);
      p.t2.push_back(*r.convergence_step - t1);
    } else {
      p.total.push_back(-1);
      p.t1.push_back(r.phase_steps.empty() ? -1 : r.phase_steps[0]);
      p.t2.push_back(-1);
    }
  }
  return p;
}

inline TrainConfig convergence_config(int d, int k, int hidden, double p1,
                                      Eigen::Index batch, double lr,
                                      std::int64_t cutoff) {
  TrainConfig c;
  c.d = d;
  c.k = k;
  c.hidden = hidden;
  c.target = TargetFunction(ParitySupport::prefix(d, k));
  c.loss = LossKind::kSquare;
  c.schedule = ScheduleSpec::plain(lr);
  c.batch = batch;
  c.steps = cutoff;
  c.eval_every = 1000;
  c.curriculum = CurriculumSpec::r_cl({1}, {p1, 0.5});
  c.advance_on_convergence = true;
  c.stop_on_convergence = true;
  return c;
}

// ---------------------------------------------------------------------------
// Figure 3: convergence time against d for several k.

enum class Fig3Variant { kLeft, kRight };

struct Fig3Setup {
  std::vector<int> ks;
  std::vector<int> ds;
  int seeds = 10;
  std::int64_t cutoff = 100000;
  Eigen::Index batch = 1024;
  double lr = 0.05;
};

inline Fig3Setup fig3_setup(Scale s) {
  Fig3Setup f;
  if (s == Scale::kPaper) {
    f.ks = {5, 6, 7, 8, 9, 10};
    f.ds = {25, 50, 75, 100};
  } else {
    f.ks = {5, 6};
    f.ds = {25, 50, 75, 100};
    f.seeds = 3;
    f.cutoff = 20000;
  }
  return f;
}

struct Fig3Row {
  Fig3Variant variant;
  int k = 0, d = 0, hidden = 0;
  double p1 = 0;
  ConvergencePoint point;
};

struct Fig3Fit {
  Fig3Variant variant;
  int k = 0;
  PowerFit fit;
  int inversions = 0;
};

struct Fig3Result {
  std::vector<Fig3Row> rows;
  std::vector<Fig3Fit> fits;
  // max c_k - min c_k per variant, over fitted k.
  double slope_spread_left = std::nan("");
  double slope_spread_right = std::nan("");
};

inline const char* fig3_name(Fig3Variant v) {
  return v == Fig3Variant::kLeft ? "left" : "right";
}

inline Fig3Result run_fig3(const ExperimentOptions& opt,
                           std::vector<Fig3Variant> variants = {Fig3Variant::kLeft,
                                                                Fig3Variant::kRight},
                           std::optional<Fig3Setup> setup = std::nullopt) {
  const Fig3Setup f = setup ? *setup : fig3_setup(opt.scale);
  const int seeds = opt.seeds > 0 ? opt.seeds : f.seeds;
  std::vector<PointTask> tasks;
  std::vector<Fig3Row> rows;
  for (auto v : variants) {
    for (int k : f.ks) {
      for (int d : f.ds) {
        Fig3Row row;
        row.variant = v;
        row.k = k;
        row.d = d;
        row.hidden = v == Fig3Variant::kLeft ? (1 << k) : d;
        row.p1 = v == Fig3Variant::kLeft ? 1.0 / 16.0 : 1.0 - 1.0 / (2.0 * k);
        rows.push_back(row);
        for (int s = 0; s < seeds; ++s) {
          PointTask t;
          t.id = std::string(fig3_name(v)) + "_k" + std::to_string(k) + "_d" +
                 std::to_string(d) + "_s" + std::to_string(s);
          t.config = convergence_config(d, k, row.hidden, row.p1, f.batch, f.lr, f.cutoff);
          t.seed = Rng::derive_seed(opt.seed, static_cast<std::uint64_t>(s));
          t.provenance = {{"experiment", "fig3"}, {"variant", fig3_name(v)},
                          {"d", d},               {"k", k},
                          {"hidden", row.hidden}, {"p1", row.p1},
                          {"batch", f.batch},     {"lr", f.lr},
                          {"cutoff", f.cutoff}};
          tasks.push_back(std::move(t));
        }
      }
    }
  }
  const auto results = run_points("fig3", std::move(tasks), opt);
  Fig3Result out;
  CsvWriter summary({"experiment", "variant", "k", "d", "hidden", "p1", "batch", "lr",
                     "cutoff", "seeds", "censored", "mean_T", "mean_T1", "mean_T2",
                     "log_d", "log_mean_T"});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Fig3Row& r = rows[i];
    r.point = collect(results, i * static_cast<std::size_t>(seeds),
                      static_cast<std::size_t>(seeds));
    // A point with any censored seed is censored as a whole.
    const bool censored = r.point.censored() > 0;
    const double mean = censored ? std::nan("") : r.point.mean_total();
    summary.row({"fig3", fig3_name(r.variant), std::int64_t{r.k}, std::int64_t{r.d},
                 std::int64_t{r.hidden}, r.p1, std::int64_t{f.batch}, f.lr, f.cutoff,
                 std::int64_t{seeds}, std::int64_t{r.point.censored()}, mean,
                 censored ? std::nan("") : r.point.mean_t1(),
                 censored ? std::nan("") : r.point.mean_t2(),
                 std::log(static_cast<double>(r.d)), std::log(mean)});
    out.rows.push_back(r);
  }
  CsvWriter fits({"experiment", "variant", "k", "slope", "intercept", "r2", "points",
                  "inversions"});
  for (auto v : variants) {
    double lo = INFINITY, hi = -INFINITY;
    for (int k : f.ks) {
      std::vector<double> x, y;
      for (const auto& r : out.rows) {
        if (r.variant != v || r.k != k) continue;
        x.push_back(r.d);
        y.push_back(r.point.censored() ? std::nan("") : r.point.mean_total());
      }
      Fig3Fit fit{v, k, fit_power_law(x, y), inversions(y)};
      if (fit.fit.points >= 2) {
        lo = std::min(lo, fit.fit.slope);
        hi = std::max(hi, fit.fit.slope);
      }
      fits.row({"fig3", fig3_name(v), std::int64_t{k}, fit.fit.slope,
                fit.fit.intercept, fit.fit.r2, std::int64_t{fit.fit.points},
                std::int64_t{fit.inversions}});
      out.fits.push_back(fit);
    }
    const double spread = hi >= lo ? hi - lo : std::nan("");
    (v == Fig3Variant::kLeft ? out.slope_spread_left : out.slope_spread_right) = spread;
  }
  const auto root = opt.out / "fig3";
  write_file_atomic(root / "summary.csv", summary.str());
  write_file_atomic(root / "fits.csv", fits.str());
  // One polyline per (variant, k).
  CsvWriter plot({"series", "d", "mean_T"});
  for (const auto& r : out.rows) {
    plot.row({std::string(fig3_name(r.variant)) + " k=" + std::to_string(r.k),
              std::int64_t{r.d},
              r.point.censored() ? std::nan("") : r.point.mean_total()});
  }
  write_file_atomic(root / "plot.csv", plot.str());
  write_file_atomic(root / "plot.svg",
                    svg_line_plot(CsvTable::parse(plot.str()),
                                  {"d", {"mean_T"}, "series", true, true,
                                   "convergence time vs d"}));
  return out;
}

// ---------------------------------------------------------------------------
// Figure 4: convergence time against the initial bias.

struct Fig4Setup {
  int d = 50, k = 8, hidden = 100;
  Eigen::Index batch = 1024;
  double lr = 0.05;
  std::int64_t cutoff = 20000;
  int seeds = 5;
  std::vector<double> p1s;
};

inline std::vector<double> fig4_grid() {
  std::vector<double> g = {0.001};
  for (int i = 1; i <= 19; ++i) g.push_back(i / 20.0);
  g.push_back(0.999);
  return g;
}

inline Fig4Setup fig4_setup(Scale s) {
  Fig4Setup f;
  f.p1s = fig4_grid();
  if (s == Scale::kPaper) {
    f.d = 100;
    f.k = 10;
    f.cutoff = 100000;
  }
  return f;
}

struct Fig4Row {
  double p1 = 0;
  ConvergencePoint point;
  // Omitted from the plot: a majority of seeds hit the cutoff.
  bool censored = false;
};

struct Fig4Result {
  std::vector<Fig4Row> rows;
  // max/min of the mean T2 over surviving points.
  double t2_ratio = std::nan("");
  const Fig4Row* at(double p1) const {
    for (const auto& r : rows) {
      if (std::abs(r.p1 - p1) < 1e-12) return &r;
    }
    return nullptr;
  }
};

inline Fig4Result run_fig4(const ExperimentOptions& opt,
                           std::optional<Fig4Setup> setup = std::nullopt) {
  const Fig4Setup f = setup ? *setup : fig4_setup(opt.scale);
  const int seeds = opt.seeds > 0 ? opt.seeds : f.seeds;
  std::vector<PointTask> tasks;
  for (double p1 : f.p1s) {
    for (int s = 0; s < seeds; ++s) {
      PointTask t;
      t.id = "p1_" + format_number(p1) + "_s" + std::to_string(s);
      t.config = convergence_config(f.d, f.k, f.hidden, p1, f.batch, f.lr, f.cutoff);
      t.seed = Rng::derive_seed(opt.seed, static_cast<std::uint64_t>(s));
      t.provenance = {{"experiment", "fig4"}, {"p1", p1},         {"d", f.d},
                      {"k", f.k},             {"hidden", f.hidden}, {"batch", f.batch},
                      {"lr", f.lr},           {"cutoff", f.cutoff}};
      tasks.push_back(std::move(t));
    }
  }
  const auto results = run_points("fig4", std::move(tasks), opt);
  Fig4Result out;
  CsvWriter summary({"experiment", "p1", "d", "k", "hidden", "batch", "lr", "cutoff",
                     "seeds", "censored", "omitted", "mean_T", "mean_T1", "mean_T2"});
  CsvWriter plot({"p1", "mean_T", "mean_T1", "mean_T2"});
  double t2_lo = INFINITY, t2_hi = -INFINITY;
  for (std::size_t i = 0; i < f.p1s.size(); ++i) {
    Fig4Row r;
    r.p1 = f.p1s[i];
    r.point = collect(results, i * static_cast<std::size_t>(seeds),
                      static_cast<std::size_t>(seeds));
    r.censored = 2 * r.point.censored() > seeds;
    const double t = r.point.mean_total(), t1 = r.point.mean_t1(),
                 t2 = r.point.mean_t2();
    summary.row({"fig4", r.p1, std::int64_t{f.d}, std::int64_t{f.k},
                 std::int64_t{f.hidden}, std::int64_t{f.batch}, f.lr, f.cutoff,
                 std::int64_t{seeds}, std::int64_t{r.point.censored()},
                 std::string(r.censored ? "1" : "0"), t, t1, t2});
    if (!r.censored) {
      plot.row({r.p1, t, t1, t2});
      t2_lo = std::min(t2_lo, t2);
      t2_hi = std::max(t2_hi, t2);
    }
    out.rows.push_back(r);
  }
  if (t2_hi >= t2_lo && t2_lo > 0) out.t2_ratio = t2_hi / t2_lo;
  const auto root = opt.out / "fig4";
  write_file_atomic(root / "summary.csv", summary.str());
  write_file_atomic(root / "plot.csv", plot.str());
  write_file_atomic(root / "plot.svg",
                    svg_line_plot(CsvTable::parse(plot.str()),
                                  {"p1", {"mean_T", "mean_T1", "mean_T2"}, "", false,
                                   false, "convergence time vs initial bias"}));
  return out;
}

// ---------------------------------------------------------------------------
// Hamming-mixture contrast: noisy exact-population GD with a 2-CL, on the
// mixture G_{S,T,eps} and on chi_S alone.

struct MixtureSetup {
  int d = 24;
  std::vector<int> S = {0, 1};
  std::vector<int> T = {12, 13, 14, 15, 16, 17};
  // p1 = num/den; eps = (p1 + 1/2) / 2 is kept exact.
  std::int64_t p1_num = 1, p1_den = 10;
  int hidden = 8;
  double lr = 0.5;
  double gradient_range = 1.0;
  double noise_std = 1e-3;
  std::int64_t phase1_steps = 20;
  std::int64_t steps = 80;
  std::int64_t eval_every = 5;
  int seeds = 5;
  std::int64_t hamming_samples = 100000;

  double p1() const { return static_cast<double>(p1_num) / static_cast<double>(p1_den); }
  Fraction eps() const {
    // (num/den + 1/2) / 2 = (2 num + den) / (4 den)
    Fraction f{2 * p1_num + p1_den, 4 * p1_den};
    const std::int64_t g = std::gcd(f.num, f.den);
    return {f.num / g, f.den / g};
  }
};

struct MixtureArm {
  std::string id;
  std::vector<PointResult> runs;
  std::vector<double> final_correlation;  // |1 - 2 err| under the uniform measure
};

struct MixtureResult {
  MixtureArm mixture;
  MixtureArm control;
  // Phase-1 Hamming check.
  double low_fraction = 0.0;
  double low_bound = 0.0;
  bool hamming_ok = false;
};

inline TrainConfig mixture_config(const MixtureSetup& m, bool control) {
  TrainConfig c;
  c.d = m.d;
  c.k = static_cast<int>(m.S.size());
  c.hidden = m.hidden;
  const ParitySupport s(m.d, m.S);
  if (control) {
    c.target = TargetFunction(s);
  } else {
    c.target = TargetFunction(HammingMixtureSpec(s, ParitySupport(m.d, m.T), m.eps()));
  }
  c.loss = LossKind::kSquare;
  c.curriculum = CurriculumSpec::r_cl({m.phase1_steps}, {m.p1(), 0.5});
  c.optimizer = OptimizerKind::kNoisyGd;
  c.noisy.lr = m.lr;
  c.noisy.gradient_range = m.gradient_range;
  c.noisy.noise_std = m.noise_std;
  c.noisy.mode = GradientMode::kPopulationExact;
  c.steps = m.steps;
  c.eval_every = m.eval_every;
  c.exact_test = true;
  return c;
}

inline MixtureResult run_mixture(const ExperimentOptions& opt,
                                 std::optional<MixtureSetup> setup = std::nullopt) {
  const MixtureSetup m = setup ? *setup : MixtureSetup{};
  const int seeds = opt.seeds > 0 ? opt.seeds : m.seeds;
  std::vector<PointTask> tasks;
  for (const bool control : {false, true}) {
    const std::string arm = control ? "control" : "mixture";
    for (int s = 0; s < seeds; ++s) {
      PointTask t;
      t.id = arm + "_s" + std::to_string(s);
      t.config = mixture_config(m, control);
      t.seed = Rng::derive_seed(opt.seed, static_cast<std::uint64_t>(s));
      t.provenance = {{"experiment", "mixture"},
                      {"arm", arm},
                      {"d", m.d},
                      {"hidden", m.hidden},
                      {"p1", m.p1()},
                      {"eps", m.eps().value()},
                      {"lr", m.lr},
                      {"A", m.gradient_range},
                      {"tau", m.noise_std},
                      {"T1", m.phase1_steps},
                      {"steps", m.steps}};
      tasks.push_back(std::move(t));
    }
  }
  auto results = run_points("mixture", std::move(tasks), opt);
  MixtureResult out;
  CsvWriter curves({"arm", "seed", "step", "bias", "test_err", "abs_corr"});
  CsvWriter summary({"experiment", "arm", "seed", "d", "hidden", "p1", "eps", "lr", "A",
                     "tau", "T1", "steps", "final_test_err", "final_abs_corr"});
  std::size_t idx = 0;
  for (MixtureArm* arm : {&out.mixture, &out.control}) {
    arm->id = arm == &out.mixture ? "mixture" : "control";
    for (int s = 0; s < seeds; ++s, ++idx) {
      PointResult& r = results[idx];
      for (const LogRow& row : r.record.rows) {
        curves.row({arm->id, std::to_string(r.task.seed), row.step, row.bias,
                    row.test_err, std::abs(1.0 - 2.0 * row.test_err)});
      }
      const double corr = std::abs(1.0 - 2.0 * r.record.final_test_error);
      arm->final_correlation.push_back(corr);
      summary.row({"mixture", arm->id, std::to_string(r.task.seed), std::int64_t{m.d},
                   std::int64_t{m.hidden}, m.p1(), m.eps().value(), m.lr,
                   m.gradient_range, m.noise_std, m.phase1_steps, m.steps,
                   r.record.final_test_error, corr});
      arm->runs.push_back(std::move(r));
    }
  }

  // Fraction of phase-1 inputs in the low-Hamming region.
  Rng rng(Rng::derive_seed(opt.seed, 1000));
  const ProductMeasure phase1(m.p1(), m.d);
  const HammingMixtureSpec g(ParitySupport(m.d, m.S), ParitySupport(m.d, m.T), m.eps());
  std::int64_t low = 0;
  Input x(static_cast<std::size_t>(m.d));
  for (std::int64_t i = 0; i < m.hamming_samples; ++i) {
    sample_input_into(phase1, rng, x);
    low += g.selects_low(hamming_weight(x)) ? 1 : 0;
  }
  out.low_fraction = static_cast<double>(low) / static_cast<double>(m.hamming_samples);
  const double gap = m.eps().value() - m.p1();
  out.low_bound = 1.0 - 2.0 * std::exp(-gap * gap * m.d);
  out.hamming_ok = out.low_fraction >= out.low_bound;
  summary.row({"mixture", "phase1_hamming", std::to_string(opt.seed), std::int64_t{m.d},
               std::int64_t{m.hidden}, m.p1(), m.eps().value(), m.lr, m.gradient_range,
               m.noise_std, m.phase1_steps, m.steps, out.low_fraction, out.low_bound});

  const auto root = opt.out / "mixture";
  write_file_atomic(root / "summary.csv", summary.str());
  write_file_atomic(root / "curves.csv", curves.str());
  // Mean |correlation| per arm and step.
  std::map<std::pair<std::string, std::int64_t>, std::pair<double, int>> mean;
  const CsvTable ct = CsvTable::parse(curves.str());
  const int c_arm = ct.column("arm"), c_step = ct.column("step"),
            c_corr = ct.column("abs_corr");
  for (std::size_t r = 0; r < ct.size(); ++r) {
    auto& e = mean[{ct.cell(r, c_arm), static_cast<std::int64_t>(ct.number(r, c_step))}];
    e.first += ct.number(r, c_corr);
    e.second += 1;
  }
  CsvWriter plot({"arm", "step", "mean_abs_corr"});
  for (const auto& [key, v] : mean) plot.row({key.first, key.second, v.first / v.second});
  write_file_atomic(root / "plot.csv", plot.str());
  write_file_atomic(root / "plot.svg",
                    svg_line_plot(CsvTable::parse(plot.str()),
                                  {"step", {"mean_abs_corr"}, "arm", false, false,
                                   "|uniform correlation| (mean over seeds)"}));
  return out;
}

}  // namespace clparity

#endif  // CLPARITY_EXPERIMENTS_HPP_
