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

#ifndef CLPARITY_CURRICULUM_HPP_
#define CLPARITY_CURRICULUM_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "clparity/errors.hpp"

namespace clparity {

// Step-indexed input bias. Steps are numbered t = 1..T.
//
//   r-CL: bias p_j on the half-open phase (T_{j-1}, T_j], T_0 = 0, T_r = T.
//   C-CL: bias p0 + t (pT - p0) / T.
//   none: 1/2 throughout.
class CurriculumSpec {
 public:
  enum class Kind { kRcl, kCcl, kNone };

  static CurriculumSpec none() { return CurriculumSpec(Kind::kNone); }

  static CurriculumSpec r_cl(std::vector<std::int64_t> boundaries,
                             std::vector<double> biases) {
    if (biases.empty() || boundaries.size() + 1 != biases.size()) {
      throw std::invalid_argument(
          "r_cl: need r biases and r-1 boundaries, r >= 1");
    }
    for (std::size_t i = 0; i < boundaries.size(); ++i) {
      if (boundaries[i] <= 0 || (i > 0 && boundaries[i] <= boundaries[i - 1])) {
        throw std::invalid_argument("r_cl: boundaries must be positive and "
                                    "strictly increasing");
      }
    }
    for (double p : biases) check_bias(p);
    CurriculumSpec c(Kind::kRcl);
    c.boundaries_ = std::move(boundaries);
    c.biases_ = std::move(biases);
    return c;
  }

  static CurriculumSpec c_cl(double p0, double pT) {
    check_bias(p0);
    check_bias(pT);
    CurriculumSpec c(Kind::kCcl);
    c.biases_ = {p0, pT};
    return c;
  }

  Kind kind() const { return kind_; }
  const std::vector<std::int64_t>& boundaries() const { return boundaries_; }
  const std::vector<double>& biases() const { return biases_; }

  // Number of distinct phases (1 for none and C-CL).
  int phases() const {
    return kind_ == Kind::kRcl ? static_cast<int>(biases_.size()) : 1;
  }

  // Bias of phase j (0-based) for r-CL; 1/2 for none.
  double phase_bias(int j) const {
    if (kind_ == Kind::kNone) return 0.5;
    return biases_.at(static_cast<std::size_t>(j));
  }

  // Boundaries must lie below the horizon for r-CL.
  void check_horizon(std::int64_t total) const {
    if (kind_ == Kind::kRcl && !boundaries_.empty() && boundaries_.back() >= total) {
      throw std::invalid_argument("r_cl: last boundary must be < T");
    }
  }

  double bias_at(std::int64_t t, std::int64_t total) const {
    if (total < 1 || t < 1 || t > total) {
      throw std::out_of_range("bias_at: t=" + std::to_string(t) +
                              " outside [1, " + std::to_string(total) + "]");
    }
    switch (kind_) {
      case Kind::kNone:
        return 0.5;
      case Kind::kCcl:
        return biases_[0] + static_cast<double>(t) * (biases_[1] - biases_[0]) /
                                static_cast<double>(total);
      case Kind::kRcl: {
        std::size_t j = 0;
        while (j < boundaries_.size() && t > boundaries_[j]) ++j;
        return biases_[j];
      }
    }
    return 0.5;
  }

 private:
  explicit CurriculumSpec(Kind k) : kind_(k) {}

  static void check_bias(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("curriculum bias outside [0,1]");
    }
  }

  Kind kind_;
  std::vector<std::int64_t> boundaries_;
  std::vector<double> biases_;
};

inline nlohmann::json to_json(const CurriculumSpec& c) {
  switch (c.kind()) {
    case CurriculumSpec::Kind::kNone:
      return {{"kind", "none"}};
    case CurriculumSpec::Kind::kCcl:
      return {{"kind", "c_cl"}, {"p0", c.biases()[0]}, {"pT", c.biases()[1]}};
    case CurriculumSpec::Kind::kRcl:
      return {{"kind", "r_cl"},
              {"boundaries", c.boundaries()},
              {"biases", c.biases()}};
  }
  return {};
}

}  // namespace clparity

#endif  // CLPARITY_CURRICULUM_HPP_
