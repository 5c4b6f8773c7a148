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

// Strict JSON loader for TrainConfig. Unknown keys are errors; d, k and
// target have no defaults. Every error names its JSON path.

#ifndef CLPARITY_CONFIG_HPP_
#define CLPARITY_CONFIG_HPP_

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "clparity/errors.hpp"
#include "clparity/training.hpp"

namespace clparity {

namespace detail {

// A JSON object view that records which keys were read.
class StrictObject {
 public:
  StrictObject(const nlohmann::json& j, std::string path)
      : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(label(), "expected an object");
  }

  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const nlohmann::json& require(const std::string& key) {
    if (!j_.contains(key)) throw ConfigError(field(key), "required field missing");
    seen_.insert(key);
    return j_.at(key);
  }

  template <typename T>
  T get(const std::string& key) {
    const nlohmann::json& v = require(key);
    try {
      if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) throw ConfigError(field(key), "expected a boolean");
      } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) {
          throw ConfigError(field(key), "expected an integer");
        }
      } else if constexpr (std::is_floating_point_v<T>) {
        if (!v.is_number()) throw ConfigError(field(key), "expected a number");
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) throw ConfigError(field(key), "expected a string");
      }
      return v.get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(field(key), e.what());
    }
  }

  template <typename T>
  T get_or(const std::string& key, T fallback) {
    return has(key) ? get<T>(key) : fallback;
  }

  template <typename T>
  std::vector<T> get_list(const std::string& key) {
    const nlohmann::json& v = require(key);
    if (!v.is_array()) throw ConfigError(field(key), "expected an array");
    std::vector<T> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const bool ok = std::is_integral_v<T> ? v[i].is_number_integer()
                                            : v[i].is_number();
      if (!ok) {
        throw ConfigError(field(key) + "[" + std::to_string(i) + "]",
                          "expected a number");
      }
      out.push_back(v[i].get<T>());
    }
    return out;
  }

  StrictObject child(const std::string& key) {
    return StrictObject(require(key), field(key));
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw ConfigError(field(key), "unknown key");
    }
  }

 private:
  std::string label() const { return path_.empty() ? "<root>" : path_; }

  const nlohmann::json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

template <typename Fn>
auto rethrow_as(const std::string& field, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(field, e.what());
  }
}

inline TargetFunction parse_target(StrictObject o, int d) {
  const std::string kind = o.get<std::string>("kind");
  if (kind == "parity") {
    auto s = o.get_list<int>("support");
    o.finish();
    return rethrow_as(o.field("support"),
                      [&] { return TargetFunction(ParitySupport(d, s)); });
  }
  if (kind == "mixture") {
    auto s = o.get_list<int>("S");
    auto t = o.get_list<int>("T");
    auto eps = o.get_list<std::int64_t>("eps");
    if (eps.size() != 2) throw ConfigError(o.field("eps"), "expected [num, den]");
    o.finish();
    return rethrow_as(o.field("S"), [&] {
      return TargetFunction(HammingMixtureSpec(
          ParitySupport(d, s), ParitySupport(d, t), Fraction{eps[0], eps[1]}));
    });
  }
  throw ConfigError(o.field("kind"), "expected parity | mixture");
}

inline InitSpec parse_init(StrictObject o) {
  InitSpec s;
  if (o.has("scheme")) {
    const auto v = o.get<std::string>("scheme");
    s.scheme = rethrow_as(o.field("scheme"), [&] { return parse_init_scheme(v); });
  }
  if (o.has("activation")) {
    const auto v = o.get<std::string>("activation");
    s.activation =
        rethrow_as(o.field("activation"), [&] { return parse_activation(v); });
  }
  s.scale = o.get_or("scale", s.scale);
  s.output_scale = o.get_or("output_scale", s.output_scale);
  if (o.has("hinge_scaling")) {
    const auto v = o.get<std::string>("hinge_scaling");
    if (v == "active_range") {
      s.hinge_scaling = HingeBiasScaling::kActiveRange;
    } else if (v == "printed") {
      s.hinge_scaling = HingeBiasScaling::kPrinted;
    } else {
      throw ConfigError(o.field("hinge_scaling"), "expected active_range | printed");
    }
  }
  o.finish();
  return s;
}

struct ParsedCurriculum {
  CurriculumSpec spec = CurriculumSpec::none();
  bool advance_on_convergence = false;
};

inline ParsedCurriculum parse_curriculum(StrictObject o) {
  ParsedCurriculum out;
  const std::string kind = o.get<std::string>("kind");
  if (kind == "none") {
    out.spec = CurriculumSpec::none();
  } else if (kind == "r_cl") {
    auto biases = o.get_list<double>("biases");
    std::vector<std::int64_t> bounds;
    if (o.has("boundaries")) bounds = o.get_list<std::int64_t>("boundaries");
    const std::string advance = o.get_or<std::string>("advance", "fixed");
    if (advance == "convergence") {
      out.advance_on_convergence = true;
      // Boundaries are unused; placeholders keep the spec well formed.
      if (bounds.empty()) {
        for (std::size_t i = 1; i < biases.size(); ++i) {
          bounds.push_back(static_cast<std::int64_t>(i));
        }
      }
    } else if (advance != "fixed") {
      throw ConfigError(o.field("advance"), "expected fixed | convergence");
    }
    out.spec = rethrow_as(o.field("biases"),
                          [&] { return CurriculumSpec::r_cl(bounds, biases); });
  } else if (kind == "c_cl") {
    const double p0 = o.get<double>("p0");
    const double pT = o.get<double>("pT");
    out.spec = rethrow_as(o.field("p0"), [&] { return CurriculumSpec::c_cl(p0, pT); });
  } else {
    throw ConfigError(o.field("kind"), "expected none | r_cl | c_cl");
  }
  o.finish();
  return out;
}

inline CovSettings parse_covariance(StrictObject o) {
  CovSettings s;
  const auto est = o.get_or<std::string>("estimation", "whole_batch");
  if (est == "whole_batch") {
    s.estimation = CovEstimation::kWholeBatch;
  } else if (est == "split_batch") {
    s.estimation = CovEstimation::kSplitBatch;
  } else {
    throw ConfigError(o.field("estimation"), "expected whole_batch | split_batch");
  }
  const auto mean = o.get_or<std::string>("label_mean", "per_phase");
  if (mean == "per_phase") {
    s.label_mean = LabelMeanRefresh::kPerPhase;
  } else if (mean == "per_step") {
    s.label_mean = LabelMeanRefresh::kPerStep;
  } else {
    throw ConfigError(o.field("label_mean"), "expected per_phase | per_step");
  }
  o.finish();
  return s;
}

inline void parse_optimizer(StrictObject o, TrainConfig& c) {
  const std::string kind = o.get<std::string>("kind");
  if (kind == "sgd") {
    c.optimizer = OptimizerKind::kSgd;
    c.schedule = ScheduleSpec::plain(o.get_or("lr", 0.01));
  } else if (kind == "noisy_gd") {
    c.optimizer = OptimizerKind::kNoisyGd;
    c.noisy.lr = o.get_or("lr", c.noisy.lr);
    c.noisy.gradient_range = o.get_or("gradient_range", c.noisy.gradient_range);
    c.noisy.noise_std = o.get_or("noise_std", c.noisy.noise_std);
    const auto mode = o.get_or<std::string>("gradient_mode", "exact");
    if (mode == "exact") {
      c.noisy.mode = GradientMode::kPopulationExact;
    } else if (mode == "mc") {
      c.noisy.mode = GradientMode::kPopulationMc;
    } else {
      throw ConfigError(o.field("gradient_mode"), "expected exact | mc");
    }
    c.noisy.batch = o.get_or<std::int64_t>("batch", c.noisy.batch);
  } else {
    throw ConfigError(o.field("kind"), "expected sgd | noisy_gd");
  }
  o.finish();
}

inline std::string position_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

// Builds a TrainConfig from a parsed JSON document.
inline TrainConfig train_config_from_json(const nlohmann::json& j) {
  detail::StrictObject o(j, "");
  TrainConfig c;
  c.d = o.get<int>("d");
  c.k = o.get<int>("k");
  if (c.d < 1) throw ConfigError("d", "must be >= 1");
  if (c.k < 0 || c.k > c.d) throw ConfigError("k", "must be in [0, d]");
  c.target = detail::parse_target(o.child("target"), c.d);
  c.hidden = o.get_or("hidden", 100);
  if (c.hidden < 1) throw ConfigError("hidden", "must be >= 1");
  if (o.has("init")) c.init = detail::parse_init(o.child("init"));
  if (o.has("curriculum")) {
    const auto cur = detail::parse_curriculum(o.child("curriculum"));
    c.curriculum = cur.spec;
    c.advance_on_convergence = cur.advance_on_convergence;
  }
  if (o.has("loss")) {
    const auto v = o.get<std::string>("loss");
    c.loss = detail::rethrow_as("loss", [&] { return parse_loss(v); });
  }
  if (o.has("covariance")) c.cov = detail::parse_covariance(o.child("covariance"));
  if (o.has("optimizer")) detail::parse_optimizer(o.child("optimizer"), c);
  c.batch = o.get_or<std::int64_t>("batch", c.batch);
  c.steps = o.get_or<std::int64_t>("steps", 1000);
  c.eval_every = o.get_or<std::int64_t>("eval_every", c.eval_every);
  c.test_samples = o.get_or<std::int64_t>("test_samples", c.test_samples);
  c.exact_test = o.get_or("exact_test", c.exact_test);
  c.convergence_threshold = o.get_or("convergence_threshold", c.convergence_threshold);
  c.stop_on_convergence = o.get_or("stop_on_convergence", c.stop_on_convergence);
  c.stop_test_error = o.get_or("stop_test_error", c.stop_test_error);
  o.finish();
  if (c.batch < 1) throw ConfigError("batch", "must be >= 1");
  if (c.steps < 0) throw ConfigError("steps", "must be >= 0");
  if (c.eval_every < 1) throw ConfigError("eval_every", "must be >= 1");
  detail::rethrow_as("curriculum", [&] {
    detail::validate(c);
    return 0;
  });
  return c;
}

// Parses JSON text. Syntax errors report line and column.
inline TrainConfig train_config_from_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("<json>", "syntax error at " +
                                    detail::position_of(text, e.byte ? e.byte - 1 : 0));
  }
  return train_config_from_json(j);
}

inline TrainConfig load_train_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return train_config_from_string(ss.str());
}

}  // namespace clparity

#endif  // CLPARITY_CONFIG_HPP_
