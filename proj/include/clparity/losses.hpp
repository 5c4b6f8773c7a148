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

#ifndef CLPARITY_LOSSES_HPP_
#define CLPARITY_LOSSES_HPP_

#include <algorithm>
#include <string>
#include <string_view>

#include "clparity/errors.hpp"

namespace clparity {

enum class LossKind { kHinge, kSquare, kCovariance };

inline std::string_view loss_name(LossKind k) {
  switch (k) {
    case LossKind::kHinge: return "hinge";
    case LossKind::kSquare: return "square";
    case LossKind::kCovariance: return "covariance";
  }
  return "?";
}

inline LossKind parse_loss(std::string_view s) {
  if (s == "hinge") return LossKind::kHinge;
  if (s == "square") return LossKind::kSquare;
  if (s == "covariance") return LossKind::kCovariance;
  throw ConfigError("loss", "expected hinge | square | covariance, got '" +
                                std::string(s) + "'");
}

// Centering means of the covariance loss, estimated from data under the
// current step's measure.
struct CovContext {
  double mean_label = 0.0;  // E[f]
  double mean_pred = 0.0;   // E[NN]
};

// How the covariance loss estimates its inner expectations.
enum class CovEstimation {
  kWholeBatch,  // both means from the full batch
  kSplitBatch,  // means from the first half, gradient from the second
};
enum class LabelMeanRefresh {
  kPerPhase,  // E[f] estimated on the first batch of each curriculum phase
  kPerStep,
};

struct CovSettings {
  CovEstimation estimation = CovEstimation::kWholeBatch;
  LabelMeanRefresh label_mean = LabelMeanRefresh::kPerPhase;
};

inline double hinge(double y, double pred) {
  return std::max(0.0, 1.0 - y * pred);
}

inline double square(double y, double pred) {
  const double r = y - pred;
  return r * r;
}

inline double covariance_loss(double y, double pred, const CovContext& ctx) {
  return std::max(0.0, 1.0 - (y - ctx.mean_label) * (pred - ctx.mean_pred));
}

inline double loss_value(LossKind kind, double y, double pred,
                         const CovContext& ctx = {}) {
  switch (kind) {
    case LossKind::kHinge: return hinge(y, pred);
    case LossKind::kSquare: return square(y, pred);
    case LossKind::kCovariance: return covariance_loss(y, pred, ctx);
  }
  return 0.0;
}

// dL/dpred with the context held fixed. The hinge and covariance losses are
// inactive (slope 0) when the bracket is exactly 0.
inline double loss_slope(LossKind kind, double y, double pred,
                         const CovContext& ctx = {}) {
  switch (kind) {
    case LossKind::kHinge:
      return 1.0 - y * pred > 0.0 ? -y : 0.0;
    case LossKind::kSquare:
      return 2.0 * (pred - y);
    case LossKind::kCovariance: {
      const double centered = y - ctx.mean_label;
      return 1.0 - centered * (pred - ctx.mean_pred) > 0.0 ? -centered : 0.0;
    }
  }
  return 0.0;
}

}  // namespace clparity

#endif  // CLPARITY_LOSSES_HPP_
