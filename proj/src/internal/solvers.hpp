// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

// Shared 1-D machinery for the exponent solvers: the tilted family with its
// gap map and log partition, bisection on the monotone gap, and concave
// maximization for the dual forms. Internal to the library.

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "lrtx/distribution.hpp"
#include "lrtx/errors.hpp"

namespace lrtx::detail {

/// The one-parameter family Q_lambda(x) proportional to
/// base(x) * exp(lambda * c(x)), c = log(a2/a1). Its gap map
/// lambda -> llr_gap(Q_lambda, a1, a2) is nondecreasing (strictly when c is
/// not constant), which makes every boundary equation solvable by bisection.
class TiltFamily {
 public:
  TiltFamily(const Distribution& base, const Distribution& a1,
             const Distribution& a2)
      : log_base_(base.alphabet_size()), c_(base.alphabet_size()) {
    for (std::size_t i = 0; i < base.alphabet_size(); ++i) {
      log_base_[i] = std::log(base[i]);
      c_[i] = std::log(a2[i]) - std::log(a1[i]);
    }
    c_min_ = *std::min_element(c_.begin(), c_.end());
    c_max_ = *std::max_element(c_.begin(), c_.end());
  }

  double c_min() const { return c_min_; }
  double c_max() const { return c_max_; }
  bool degenerate() const { return c_max_ - c_min_ < 1e-14; }

  /// llr_gap of Q_lambda.
  double gap(double lambda) const {
    double m = log_base_[0] + lambda * c_[0];
    for (std::size_t i = 1; i < c_.size(); ++i) {
      m = std::max(m, log_base_[i] + lambda * c_[i]);
    }
    double w_sum = 0.0, wc_sum = 0.0;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      const double w = std::exp(log_base_[i] + lambda * c_[i] - m);
      w_sum += w;
      wc_sum += w * c_[i];
    }
    return wc_sum / w_sum;
  }

  /// log sum_x base(x) exp(lambda c(x)); the dual objectives are
  /// lambda * gamma - log_partition(lambda).
  double log_partition(double lambda) const {
    double m = log_base_[0] + lambda * c_[0];
    for (std::size_t i = 1; i < c_.size(); ++i) {
      m = std::max(m, log_base_[i] + lambda * c_[i]);
    }
    double w_sum = 0.0;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      w_sum += std::exp(log_base_[i] + lambda * c_[i] - m);
    }
    return m + std::log(w_sum);
  }

 private:
  std::vector<double> log_base_;
  std::vector<double> c_;
  double c_min_ = 0.0;
  double c_max_ = 0.0;
};

/// Bisection for gap(lambda) = target on a bracket with
/// gap(lo) <= target <= gap(hi). Converges on both bracket width and
/// residual; ties resolve toward the smaller lambda.
inline double bisect_gap(const TiltFamily& family, double target, double lo,
                         double hi, const ToleranceConfig& tol) {
  const double width_tol = tol.abs_tol * std::max(1.0, std::abs(hi));
  double mid = lo;
  for (int it = 0; it < tol.max_iter; ++it) {
    mid = 0.5 * (lo + hi);
    const double resid = family.gap(mid) - target;
    if (resid <= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= width_tol && std::abs(resid) <= tol.abs_tol) {
      break;
    }
    if (hi - lo <= 1e-16 * std::max(1.0, std::abs(hi))) {
      break;  // bracket exhausted at machine precision
    }
  }
  // Prefer the smaller end of the final bracket when it already meets the
  // residual tolerance.
  if (std::abs(family.gap(lo) - target) <= tol.abs_tol) {
    return lo;
  }
  return mid;
}

/// Solves gap(lambda) = target over lambda >= 0, growing the upper bracket
/// geometrically. Throws InfeasibleError when the target is not attainable
/// (at or beyond the supremum of the statistic) or after 60 doublings.
inline double solve_gap_lambda(const TiltFamily& family, double target,
                               const ToleranceConfig& tol) {
  if (family.degenerate()) {
    if (std::abs(family.gap(0.0) - target) <= tol.abs_tol) return 0.0;
    throw InfeasibleError("tilt solve: statistic is constant and never meets the threshold");
  }
  if (target >= family.c_max()) {
    throw InfeasibleError(
        "tilt solve: threshold at or beyond the supremum of the statistic "
        "(unbounded lambda)");
  }
  if (family.gap(0.0) >= target) {
    return 0.0;
  }
  double lo = 0.0;
  double hi = 1.0;
  int doublings = 0;
  while (family.gap(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 60) {
      throw InfeasibleError("tilt solve: bracket growth exhausted after 60 doublings");
    }
  }
  return bisect_gap(family, target, lo, hi, tol);
}

/// Maximizes a concave function on [lo, hi] by trisection. The value
/// converges quadratically in the final bracket width.
inline std::pair<double, double> maximize_concave(
    const std::function<double(double)>& f, double lo, double hi,
    const ToleranceConfig& tol) {
  const double width_tol = std::min(1e-11, tol.abs_tol) * std::max(1.0, std::abs(hi));
  int iter = 0;
  while (hi - lo > width_tol && iter++ < 400) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (f(m1) < f(m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  const double x = 0.5 * (lo + hi);
  return {x, f(x)};
}

}  // namespace lrtx::detail
