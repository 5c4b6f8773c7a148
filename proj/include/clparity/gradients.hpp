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

// Loss gradients over a (possibly weighted) batch, and exact population
// gradients by enumeration of {-1,+1}^d.

#ifndef CLPARITY_GRADIENTS_HPP_
#define CLPARITY_GRADIENTS_HPP_

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "clparity/boolean_data.hpp"
#include "clparity/losses.hpp"
#include "clparity/network.hpp"

namespace clparity {

inline int sign_output(double pred) { return pred >= 0.0 ? 1 : -1; }

struct GradientResult {
  ParamGrad grad;
  double loss = 0.0;   // weighted mean loss over the gradient rows
  double error = 0.0;  // weighted classification error over all rows
  CovContext ctx;      // centering means used (covariance loss only)
};

namespace detail {

inline Eigen::VectorXd normalized_weights(const LabeledBatch& batch,
                                          Eigen::Index begin,
                                          Eigen::Index end) {
  Eigen::VectorXd w(end - begin);
  for (Eigen::Index i = begin; i < end; ++i) w(i - begin) = batch.weight(i);
  const double total = w.sum();
  if (!(total > 0.0)) throw std::invalid_argument("batch weights sum to 0");
  return w / total;
}

}  // namespace detail

// Gradient of the weighted batch loss. For the covariance loss the centering
// mean E[NN] is a function of the parameters and is differentiated through;
// `label_mean` overrides the batch estimate of E[f] when set.
inline GradientResult batch_gradient(const NetworkParams& p,
                                     const LabeledBatch& batch, LossKind loss,
                                     const CovSettings& cov = {},
                                     std::optional<double> label_mean = {}) {
  const Eigen::Index B = batch.size();
  if (B < 1) throw std::invalid_argument("batch_gradient: empty batch");
  const Eigen::MatrixXd x = batch.inputs.cast<double>();
  const Eigen::MatrixXd z = batch_preactivations(p, x);
  const Eigen::MatrixXd s = apply_activation(z, p.activation);
  const Eigen::VectorXd pred = s * p.a;
  const Eigen::VectorXd all_w = detail::normalized_weights(batch, 0, B);

  GradientResult out;
  for (Eigen::Index i = 0; i < B; ++i) {
    out.error += all_w(i) * (sign_output(pred(i)) != batch.labels(i) ? 1.0 : 0.0);
  }

  Eigen::VectorXd r = Eigen::VectorXd::Zero(B);  // d(total loss)/d(pred_s)
  if (loss != LossKind::kCovariance) {
    for (Eigen::Index i = 0; i < B; ++i) {
      r(i) = all_w(i) * loss_slope(loss, batch.labels(i), pred(i));
      out.loss += all_w(i) * loss_value(loss, batch.labels(i), pred(i));
    }
  } else {
    const bool split = cov.estimation == CovEstimation::kSplitBatch;
    if (split && B < 2) {
      throw std::invalid_argument("batch_gradient: split estimation needs B >= 2");
    }
    const Eigen::Index mid = split ? B / 2 : B;
    const Eigen::Index grad_begin = split ? mid : 0;
    const Eigen::VectorXd est_w = detail::normalized_weights(batch, 0, mid);
    const Eigen::VectorXd grad_w = detail::normalized_weights(batch, grad_begin, B);
    out.ctx.mean_label =
        label_mean ? *label_mean : est_w.dot(batch.labels.head(mid));
    out.ctx.mean_pred = est_w.dot(pred.head(mid));
    double g_bar = 0.0;
    for (Eigen::Index i = grad_begin; i < B; ++i) {
      const double wi = grad_w(i - grad_begin);
      const double g = loss_slope(loss, batch.labels(i), pred(i), out.ctx);
      r(i) = wi * g;
      g_bar += wi * g;
      out.loss += wi * loss_value(loss, batch.labels(i), pred(i), out.ctx);
    }
    // Chain rule through mean_pred = sum_s est_w(s) pred(s).
    for (Eigen::Index i = 0; i < mid; ++i) r(i) -= est_w(i) * g_bar;
  }

  const Eigen::MatrixXd delta =
      (apply_derivative(z, p.activation).array().colwise() * r.array())
          .rowwise() * p.a.transpose().array();
  out.grad.a.noalias() = s.transpose() * r;
  out.grad.b = delta.colwise().sum().transpose();
  out.grad.w.noalias() = delta.transpose() * x;
  return out;
}

// ---------------------------------------------------------------------------
// Exact population gradient.

struct PopulationResult {
  ParamGrad grad;
  double loss = 0.0;   // E[L] under the training measure
  double error = 0.0;  // P(sign NN != f) under the training measure
  CovContext ctx;      // exact centering means under the training measure
  // Under the uniform measure, computed in the same sweep.
  double uniform_error = 0.0;
  double uniform_loss = 0.0;
  double uniform_correlation = 0.0;  // E[f * sign(NN)]
};

namespace detail {

// Coordinates [offset, offset + bits) of the cube enumerated as a table.
struct HalfCube {
  int offset = 0;
  int bits = 0;
  std::size_t count = 1;
  std::vector<int> weight;  // Hamming weight of each pattern

  HalfCube(int off, int nbits)
      : offset(off), bits(nbits), count(std::size_t{1} << nbits),
        weight(count) {
    for (std::size_t v = 0; v < count; ++v) {
      weight[v] = std::popcount(static_cast<std::uint64_t>(v));
    }
  }

  int coord(std::size_t v, int j) const {
    return ((v >> (j - offset)) & 1u) ? 1 : -1;
  }

  // Partial parity of the support coordinates inside this half.
  std::vector<int> parity(const ParitySupport& s) const {
    std::vector<int> out(count, 1);
    for (std::size_t v = 0; v < count; ++v) {
      for (int j : s.indices()) {
        if (j >= offset && j < offset + bits) out[v] *= coord(v, j);
      }
    }
    return out;
  }

  // Row-major count x N table of partial preactivations.
  std::vector<double> partial_z(const NetworkParams& p, bool add_bias) const {
    const int n = p.hidden();
    std::vector<double> out(count * static_cast<std::size_t>(n));
    for (std::size_t v = 0; v < count; ++v) {
      for (int i = 0; i < n; ++i) {
        double z = add_bias ? p.b(i) : 0.0;
        for (int j = offset; j < offset + bits; ++j) z += p.w(i, j) * coord(v, j);
        out[v * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] = z;
      }
    }
    return out;
  }
};

inline constexpr int kLowBits = 10;

// Gradient accumulator for sum_x r(x) * dNN(x)/dtheta. The w-gradient of
// unit i is sum_x c_i(x) x, and x splits into a low and a high pattern, so
// c_i is summed per pattern and expanded into w only at the end.
struct GradAccumulator {
  int n;
  std::size_t nlow;
  std::vector<double> low;   // unit-major: N x nlow
  std::vector<double> high;  // pattern-major: nhigh x N
  std::vector<double> ga;

  GradAccumulator(int hidden, std::size_t nl, std::size_t nhigh)
      : n(hidden), nlow(nl), low(nl * static_cast<std::size_t>(hidden), 0.0),
        high(nhigh * static_cast<std::size_t>(hidden), 0.0),
        ga(static_cast<std::size_t>(hidden), 0.0) {}

  ParamGrad finish(const HalfCube& lo, const HalfCube& hi, int d) const {
    ParamGrad g;
    const auto un = static_cast<std::size_t>(n);
    g.a = Eigen::Map<const Eigen::VectorXd>(ga.data(), n);
    g.b = Eigen::VectorXd::Zero(n);
    g.w = Eigen::MatrixXd::Zero(n, d);
    for (int i = 0; i < n; ++i) {
      const double* row = &low[static_cast<std::size_t>(i) * nlow];
      for (std::size_t v = 0; v < lo.count; ++v) {
        g.b(i) += row[v];
        for (int j = 0; j < lo.bits; ++j) g.w(i, j) += lo.coord(v, j) * row[v];
      }
    }
    for (std::size_t v = 0; v < hi.count; ++v) {
      for (int j = hi.offset; j < hi.offset + hi.bits; ++j) {
        const double sgn = hi.coord(v, j);
        for (int i = 0; i < n; ++i) g.w(i, j) += sgn * high[v * un + static_cast<std::size_t>(i)];
      }
    }
    return g;
  }
};

// Target values for all low patterns at a fixed high pattern.
class SplitTarget {
 public:
  SplitTarget(const TargetFunction& f, const HalfCube& lo, const HalfCube& hi) {
    if (const auto* s = f.parity()) {
      s_lo_ = lo.parity(*s);
      s_hi_ = hi.parity(*s);
    } else {
      const auto& g = *f.mixture();
      mixture_ = true;
      s_lo_ = lo.parity(g.support_low());
      s_hi_ = hi.parity(g.support_low());
      t_lo_ = lo.parity(g.support_high());
      t_hi_ = hi.parity(g.support_high());
      for (int h = 0; h <= g.dim(); ++h) low_side_.push_back(g.selects_low(h) ? 1 : 0);
    }
  }

  void fill(const HalfCube& lo, std::size_t vh, int high_weight, double* y) const {
    for (std::size_t vl = 0; vl < lo.count; ++vl) {
      const auto h = static_cast<std::size_t>(lo.weight[vl] + high_weight);
      y[vl] = (mixture_ && !low_side_[h]) ? t_lo_[vl] * t_hi_[vh]
                                          : s_lo_[vl] * s_hi_[vh];
    }
  }

 private:
  bool mixture_ = false;
  std::vector<int> s_lo_, s_hi_, t_lo_, t_hi_;
  std::vector<char> low_side_;
};

// Walks the cube one high pattern at a time; the 2^kLowBits low patterns of a
// block are processed as contiguous arrays.
template <Activation kAct>
class CubeSweep {
 public:
  CubeSweep(const NetworkParams& p, const ProductMeasure& m,
            const TargetFunction& target)
      : n_(p.hidden()), d_(m.dim()), lo_(0, std::min(d_, kLowBits)),
        hi_(lo_.bits, d_ - lo_.bits), f_(target, lo_, hi_),
        a_(p.a.data(), p.a.data() + n_), zhi_(hi_.partial_z(p, true)),
        mass_(static_cast<std::size_t>(d_) + 1), pred_(lo_.count),
        y_(lo_.count), w_(lo_.count) {
    const std::vector<double> z = lo_.partial_z(p, false);
    zlo_.resize(z.size());
    const auto un = static_cast<std::size_t>(n_);
    for (std::size_t v = 0; v < lo_.count; ++v)
      for (std::size_t i = 0; i < un; ++i) zlo_[i * lo_.count + v] = z[v * un + i];
    for (int h = 0; h <= d_; ++h) mass_[static_cast<std::size_t>(h)] = m.point_mass(h);
  }

  const HalfCube& lo() const { return lo_; }
  const HalfCube& hi() const { return hi_; }
  std::size_t block() const { return lo_.count; }

  // For each block: fills labels y, masses w and predictions pred, calls
  // coeffs(y, w, pred, r, q) to get per-point coefficients, then adds
  // r * dNN/dtheta to main and q * dNN/dtheta to aux (either may be null).
  template <typename Coeffs>
  void run(GradAccumulator* main, GradAccumulator* aux, Coeffs&& coeffs) {
    const std::size_t L = lo_.count;
    const auto un = static_cast<std::size_t>(n_);
    std::vector<double> r(L, 0.0), q(L, 0.0);
    for (std::size_t vh = 0; vh < hi_.count; ++vh) {
      const double* zh = &zhi_[vh * un];
      const int hw = hi_.weight[vh];
      f_.fill(lo_, vh, hw, y_.data());
      for (std::size_t vl = 0; vl < L; ++vl) {
        w_[vl] = mass_[static_cast<std::size_t>(lo_.weight[vl] + hw)];
      }
      Eigen::Map<Eigen::ArrayXd> pred(pred_.data(), static_cast<Eigen::Index>(L));
      pred.setZero();
      for (std::size_t i = 0; i < un; ++i) {
        pred += a_[i] * act_values(column(i) + zh[i]);
      }
      coeffs(y_.data(), w_.data(), pred_.data(), r.data(), q.data(), L);
      if (main) accumulate(*main, vh, zh, r.data());
      if (aux) accumulate(*aux, vh, zh, q.data());
    }
  }

 private:
  using Block = Eigen::Map<const Eigen::ArrayXd>;

  Block column(std::size_t i) const {
    return Block(&zlo_[i * lo_.count], static_cast<Eigen::Index>(lo_.count));
  }

  template <typename E>
  static auto act_values(const E& v) {
    if constexpr (kAct == Activation::kRelu) {
      return v.max(0.0);
    } else {
      return v.max(0.0).min(1.0);
    }
  }

  template <typename E>
  static auto act_slopes(const E& v) {
    if constexpr (kAct == Activation::kRelu) {
      return (v > 0.0).template cast<double>();
    } else {
      return ((v >= 0.0) && (v <= 1.0)).template cast<double>();
    }
  }

  void accumulate(GradAccumulator& acc, std::size_t vh, const double* zh,
                  const double* rp) {
    const auto L = static_cast<Eigen::Index>(lo_.count);
    const auto un = static_cast<std::size_t>(n_);
    const Block r(rp, L);
    for (std::size_t i = 0; i < un; ++i) {
      Eigen::Map<Eigen::ArrayXd> cl(&acc.low[i * lo_.count], L);
      const auto v = column(i) + zh[i];
      tmp_ = (a_[i] * r) * act_slopes(v);
      cl += tmp_;
      acc.high[vh * un + i] = tmp_.sum();
      acc.ga[i] += (r * act_values(v)).sum();
    }
  }

  int n_, d_;
  HalfCube lo_, hi_;
  SplitTarget f_;
  std::vector<double> a_, zlo_, zhi_, mass_, pred_, y_, w_;
  Eigen::ArrayXd tmp_;
};

template <Activation kAct>
PopulationResult population_gradient_impl(const NetworkParams& p,
                                          const TargetFunction& target,
                                          const ProductMeasure& m,
                                          LossKind loss,
                                          std::optional<double> label_mean) {
  const int d = m.dim();
  const int n = p.hidden();
  CubeSweep<kAct> sweep(p, m, target);
  const double umass = std::ldexp(1.0, -d);
  const bool cov = loss == LossKind::kCovariance;

  PopulationResult out;
  CovContext uctx;
  if (cov) {
    double mf = 0.0, mp = 0.0, umf = 0.0, ump = 0.0;
    sweep.run(nullptr, nullptr,
              [&](const double* y, const double* w, const double* pred, double*,
                  double*, std::size_t L) {
                for (std::size_t i = 0; i < L; ++i) {
                  mf += w[i] * y[i];
                  mp += w[i] * pred[i];
                  umf += umass * y[i];
                  ump += umass * pred[i];
                }
              });
    out.ctx = {label_mean ? *label_mean : mf, mp};
    uctx = {umf, ump};
  }

  GradAccumulator main(n, sweep.block(), sweep.hi().count);
  // Only for the covariance loss: sum_x w(x) dNN(x)/dtheta.
  std::optional<GradAccumulator> mean_grad;
  if (cov) mean_grad.emplace(n, sweep.block(), sweep.hi().count);
  double g_bar = 0.0;

  auto block = [&](auto loss_tag, const double* y, const double* w,
                   const double* pred, double* r, double* q, std::size_t L) {
    constexpr LossKind kLoss = decltype(loss_tag)::value;
    const CovContext ctx = out.ctx;
    double err = 0.0, uerr = 0.0, ucorr = 0.0, lsum = 0.0, ulsum = 0.0, gsum = 0.0;
    for (std::size_t i = 0; i < L; ++i) {
      const double guess = pred[i] >= 0.0 ? 1.0 : -1.0;
      const double miss = guess != y[i] ? 1.0 : 0.0;
      err += w[i] * miss;
      uerr += miss;
      ucorr += y[i] * guess;
      lsum += w[i] * loss_value(kLoss, y[i], pred[i], ctx);
      ulsum += loss_value(kLoss, y[i], pred[i], uctx);
      const double slope = loss_slope(kLoss, y[i], pred[i], ctx);
      gsum += w[i] * slope;
      r[i] = w[i] * slope;
      q[i] = w[i];
    }
    out.error += err;
    out.uniform_error += umass * uerr;
    out.uniform_correlation += umass * ucorr;
    out.loss += lsum;
    out.uniform_loss += umass * ulsum;
    g_bar += gsum;
  };
  GradAccumulator* aux = mean_grad ? &*mean_grad : nullptr;
  switch (loss) {
    case LossKind::kHinge:
      sweep.run(&main, aux, [&](auto... args) {
        block(std::integral_constant<LossKind, LossKind::kHinge>{}, args...);
      });
      break;
    case LossKind::kSquare:
      sweep.run(&main, aux, [&](auto... args) {
        block(std::integral_constant<LossKind, LossKind::kSquare>{}, args...);
      });
      break;
    case LossKind::kCovariance:
      sweep.run(&main, aux, [&](auto... args) {
        block(std::integral_constant<LossKind, LossKind::kCovariance>{}, args...);
      });
      break;
  }

  out.grad = main.finish(sweep.lo(), sweep.hi(), d);
  if (mean_grad) {
    ParamGrad centering = mean_grad->finish(sweep.lo(), sweep.hi(), d);
    centering *= -g_bar;
    out.grad += centering;
  }
  return out;
}

}  // namespace detail

// E_{x ~ m}[grad L(theta, f, x)] by enumerating all 2^d points (d <= 25).
// Each point costs O(N): preactivations are split into tables over the low
// and high coordinate halves.
inline PopulationResult population_gradient(
    const NetworkParams& p, const TargetFunction& target,
    const ProductMeasure& m, LossKind loss,
    std::optional<double> label_mean = {}) {
  check_enumerable(m.dim(), "population_gradient");
  check_input(p, m.dim());
  if (target.dim() != m.dim()) {
    throw DimensionMismatch("population_gradient: target dim != measure dim");
  }
  if (p.activation == Activation::kRelu) {
    return detail::population_gradient_impl<Activation::kRelu>(p, target, m,
                                                               loss, label_mean);
  }
  return detail::population_gradient_impl<Activation::kRamp>(p, target, m, loss,
                                                             label_mean);
}

}  // namespace clparity

#endif  // CLPARITY_GRADIENTS_HPP_
