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

// clparity: train | verify | fig2 | fig3 | fig4 | mixture.
// Exit codes: 0 success, 1 failed verification, 2 configuration error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "clparity/config.hpp"
#include "clparity/experiments.hpp"
#include "clparity/io.hpp"
#include "clparity/theory_verify.hpp"
#include "clparity/training.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitConfig = 2;

struct AppConfig {
  std::string command;
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out = "out";
  bool long_run = false;
  int jobs = 1;
  int seeds = 0;
  std::string scale = "desk";
  bool all = false;
  bool timing = false;
};

nlohmann::json manifest_base(const AppConfig& app) {
  return {{"command", app.command},
          {"seed", app.seed},
          {"out", app.out},
          {"scale", app.scale},
          {"long_run", app.long_run},
          {"jobs", app.jobs},
          {"seeds", app.seeds},
          {"config", app.config_path}};
}

void write_manifest(const AppConfig& app, const std::string& name,
                    const nlohmann::json& body) {
  nlohmann::json j = manifest_base(app);
  j["result"] = body;
  clparity::write_file_atomic(std::filesystem::path(app.out) / name / "manifest.json",
                              j.dump(2) + "\n");
}

clparity::ExperimentOptions experiment_options(const AppConfig& app) {
  clparity::ExperimentOptions o;
  o.out = app.out;
  o.seed = app.seed;
  o.scale = app.scale == "paper" ? clparity::Scale::kPaper : clparity::Scale::kDesk;
  o.jobs = app.jobs;
  o.seeds = app.seeds;
  o.timing = app.timing;
  o.log = &std::cout;
  return o;
}

int run_train(const AppConfig& app) {
  if (app.config_path.empty()) {
    throw clparity::ConfigError("--config", "train needs a config file");
  }
  const clparity::TrainConfig cfg = clparity::load_train_config(app.config_path);
  clparity::PointTask task;
  task.id = "run";
  task.config = cfg;
  task.seed = app.seed;
  task.provenance = {{"experiment", "train"}};
  auto opt = experiment_options(app);
  const auto results = clparity::run_points("train", {task}, opt);
  const auto& rec = results.front().record;
  write_manifest(app, "train",
                 {{"steps_run", rec.steps_run},
                  {"final_test_error", std::isnan(rec.final_test_error)
                                           ? nlohmann::json(nullptr)
                                           : nlohmann::json(rec.final_test_error)},
                  {"convergence_step", rec.convergence_step
                                           ? nlohmann::json(*rec.convergence_step)
                                           : nlohmann::json(nullptr)}});
  return kExitOk;
}

int run_verify(const AppConfig& app) {
  if (!app.all) throw clparity::ConfigError("--all", "verify currently needs --all");
  const auto reports = clparity::verify_all(app.seed);
  bool ok = true;
  for (const auto& r : reports) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.check << " " << r.params.dump()
              << " metric=" << clparity::format_number(r.metric)
              << " bound=" << clparity::format_number(r.bound) << "\n";
    ok = ok && r.pass;
  }
  std::cout << (ok ? "all checks passed" : "some checks failed") << " ("
            << reports.size() << ")\n";
  write_manifest(app, "verify", clparity::verification_manifest(reports));
  return ok ? kExitOk : kExitFailed;
}

int run_experiment(const AppConfig& app) {
  const auto opt = experiment_options(app);
  if (app.command == "fig2") {
    if (opt.scale == clparity::Scale::kPaper && !app.long_run) {
      throw clparity::ConfigError("--scale", "paper-scale fig2 needs --long-run");
    }
    const auto r = clparity::run_fig2(opt);
    nlohmann::json body = nlohmann::json::object();
    for (const auto& p : r.panels) {
      body[p.id] = {{"reach_0.05_step", p.reach_step}, {"min_test_error", p.min_test_error}};
    }
    write_manifest(app, "fig2", body);
  } else if (app.command == "fig3") {
    const auto r = clparity::run_fig3(opt);
    nlohmann::json fits = nlohmann::json::array();
    for (const auto& f : r.fits) {
      fits.push_back({{"variant", clparity::fig3_name(f.variant)},
                      {"k", f.k},
                      {"slope", std::isnan(f.fit.slope) ? nlohmann::json(nullptr)
                                                        : nlohmann::json(f.fit.slope)},
                      {"r2", std::isnan(f.fit.r2) ? nlohmann::json(nullptr)
                                                  : nlohmann::json(f.fit.r2)},
                      {"inversions", f.inversions}});
    }
    write_manifest(app, "fig3", {{"fits", fits}});
  } else if (app.command == "fig4") {
    const auto r = clparity::run_fig4(opt);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows) {
      rows.push_back({{"p1", row.p1},
                      {"censored_seeds", row.point.censored()},
                      {"omitted", row.censored}});
    }
    write_manifest(app, "fig4", {{"points", rows}});
  } else {
    const auto r = clparity::run_mixture(opt);
    write_manifest(app, "mixture",
                   {{"mixture_abs_corr", r.mixture.final_correlation},
                    {"control_abs_corr", r.control.final_correlation},
                    {"phase1_low_fraction", r.low_fraction},
                    {"phase1_low_bound", r.low_bound}});
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  AppConfig app;
  CLI::App cli{"Curriculum learning for parities: training, checks and figures."};
  cli.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", app.seed, "Base seed (unsigned 64-bit)");
    sub->add_option("--out", app.out, "Output directory");
    sub->add_option("--jobs", app.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--timing", app.timing, "Add an elapsed_ms column to run.csv");
  };
  auto add_sweep = [&](CLI::App* sub) {
    add_common(sub);
    sub->add_option("--scale", app.scale, "paper | desk")
        ->check(CLI::IsMember({"paper", "desk"}));
    sub->add_flag("--long-run", app.long_run, "Allow paper-scale runs");
    sub->add_option("--seeds", app.seeds, "Seeds per point (default per experiment)")
        ->check(CLI::PositiveNumber);
  };

  auto* train = cli.add_subcommand("train", "Train one configuration");
  add_common(train);
  train->add_option("--config", app.config_path, "JSON config file");
  auto* verify = cli.add_subcommand("verify", "Run the theory checks");
  add_common(verify);
  verify->add_flag("--all", app.all, "Run every check");
  for (const char* name : {"fig2", "fig3", "fig4", "mixture"}) {
    add_sweep(cli.add_subcommand(name, std::string("Run the ") + name + " sweep"));
  }

  try {
    cli.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return cli.exit(e);
  } catch (const CLI::ParseError& e) {
    cli.exit(e);
    return kExitConfig;
  }
  app.command = cli.get_subcommands().front()->get_name();

  try {
    std::filesystem::create_directories(app.out);
    if (app.command == "train") return run_train(app);
    if (app.command == "verify") return run_verify(app);
    return run_experiment(app);
  } catch (const clparity::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  }
}
