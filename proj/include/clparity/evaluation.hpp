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

// Generalization error and correlation of a network, always under the
// uniform measure.

#ifndef CLPARITY_EVALUATION_HPP_
#define CLPARITY_EVALUATION_HPP_

#include <algorithm>
#include <cstdint>

#include <Eigen/Dense>

#include "clparity/boolean_data.hpp"
#include "clparity/gradients.hpp"
#include "clparity/losses.hpp"
#include "clparity/network.hpp"
#include "clparity/rng.hpp"

namespace clparity {

struct ErrorMode {
  enum class Kind { kLoss, kClassification };
  Kind kind = Kind::kClassification;
  LossKind loss = LossKind::kSquare;

  static ErrorMode classification() { return {}; }
  static ErrorMode of_loss(LossKind l) { return {Kind::kLoss, l}; }
};

namespace detail {

// Streams the uniform cube (or n uniform samples) in blocks, calling
// fn(block, labels, weights) with block rows as doubles.
template <typename Fn>
void for_each_uniform_block(const TargetFunction& f, int d, Sampling sampling,
                            Rng& rng, Fn&& fn) {
  constexpr Eigen::Index kBlock = 4096;
  const bool exhaustive = sampling.is_exhaustive();
  if (exhaustive) check_enumerable(d, "uniform evaluation");
  const std::uint64_t total =
      exhaustive ? (std::uint64_t{1} << d) : *sampling.samples;
  if (total == 0) throw std::invalid_argument("evaluation: n must be > 0");
  const double w = 1.0 / static_cast<double>(total);
  const ProductMeasure uniform = ProductMeasure::uniform(d);
  InputMatrix rows;
  Eigen::VectorXd labels;
  for (std::uint64_t start = 0; start < total; start += kBlock) {
    const auto len = static_cast<Eigen::Index>(
        std::min<std::uint64_t>(kBlock, total - start));
    rows.resize(len, d);
    labels.resize(len);
    for (Eigen::Index i = 0; i < len; ++i) {
      std::span<std::int8_t> row(rows.data() + i * d, static_cast<std::size_t>(d));
      if (exhaustive) {
        cube_point(start + static_cast<std::uint64_t>(i), row);
      } else {
        sample_input_into(uniform, rng, row);
      }
      labels(i) = f(row);
    }
    fn(Eigen::MatrixXd(rows.cast<double>()), labels, w);
  }
}

}  // namespace detail

// Expected loss or classification error under Rad(1/2)^{(x)d}. sign(0) = +1.
// For the covariance loss the centering means are the exact (or sampled)
// uniform means, computed in a first pass.
inline double generalization_error(const NetworkParams& p,
                                   const TargetFunction& f, ErrorMode mode,
                                   Sampling sampling, Rng& rng) {
  const int d = f.dim();
  check_input(p, d);
  CovContext ctx;
  const bool cov = mode.kind == ErrorMode::Kind::kLoss &&
                   mode.loss == LossKind::kCovariance;
  // Sampled covariance evaluation reuses the same points for both passes.
  Rng replay = rng;
  if (cov) {
    detail::for_each_uniform_block(
        f, d, sampling, rng,
        [&](const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double w) {
          ctx.mean_label += w * y.sum();
          ctx.mean_pred += w * forward_batch(p, x).sum();
        });
  }
  double acc = 0.0;
  detail::for_each_uniform_block(
      f, d, sampling, cov ? replay : rng,
      [&](const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double w) {
        const Eigen::VectorXd pred = forward_batch(p, x);
        for (Eigen::Index i = 0; i < pred.size(); ++i) {
          if (mode.kind == ErrorMode::Kind::kClassification) {
            acc += w * (sign_output(pred(i)) != y(i) ? 1.0 : 0.0);
          } else {
            acc += w * loss_value(mode.loss, y(i), pred(i), ctx);
          }
        }
      });
  return acc;
}

// E_uniform[f(x) * sign(NN(x))]: the network is thresholded to a +-1 guess.
inline double network_correlation(const NetworkParams& p,
                                  const TargetFunction& f, Sampling sampling,
                                  Rng& rng) {
  check_input(p, f.dim());
  double acc = 0.0;
  detail::for_each_uniform_block(
      f, f.dim(), sampling, rng,
      [&](const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double w) {
        const Eigen::VectorXd pred = forward_batch(p, x);
        for (Eigen::Index i = 0; i < pred.size(); ++i) {
          acc += w * y(i) * sign_output(pred(i));
        }
      });
  return acc;
}

}  // namespace clparity

#endif  // CLPARITY_EVALUATION_HPP_
