// Apache License, Version 2.0, refer to LICENSE.txt
#include "lrtx/lrt.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "internal/solvers.hpp"
#include "lrtx/divergence.hpp"
#include "lrtx/errors.hpp"

namespace lrtx {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ThresholdRange threshold_range(const Distribution& p1, const Distribution& p2) {
  return {-kl(p1, p2), kl(p2, p1)};
}

double solve_lambda_matched(const Distribution& p1, const Distribution& p2,
                            double gamma, const ToleranceConfig& tol) {
  tol.validate();
  const ThresholdRange range = threshold_range(p1, p2);
  if (gamma < range.lo) {
    throw std::range_error("solve_lambda_matched: gamma = " +
                           std::to_string(gamma) + " below lower endpoint " +
                           std::to_string(range.lo));
  }
  if (gamma > range.hi) {
    throw std::range_error("solve_lambda_matched: gamma = " +
                           std::to_string(gamma) + " above upper endpoint " +
                           std::to_string(range.hi));
  }
  const detail::TiltFamily family(p1, p1, p2);
  return detail::bisect_gap(family, gamma, 0.0, 1.0, tol);
}

ExponentPair matched_exponents(const Distribution& p1, const Distribution& p2,
                               double gamma, const ToleranceConfig& tol) {
  tol.validate();
  const ThresholdRange range = threshold_range(p1, p2);

  if (range.contains(gamma)) {
    const detail::TiltFamily family(p1, p1, p2);
    const double lambda = detail::bisect_gap(family, gamma, 0.0, 1.0, tol);
    Distribution q = tilt(p1, p1, p2, lambda);
    const double e1 = kl(q, p1);
    const double e2 = kl(q, p2);
    return {e1, e2, q, q, lambda, 1.0 - lambda};
  }

  if (gamma < range.lo) {
    // p1 is inside the decision region for hypothesis 2: e1 = 0. The type-II
    // achiever sits past p1 on the tilted family anchored at p2.
    const detail::TiltFamily family(p2, p2, p1);
    try {
      const double mu = detail::solve_gap_lambda(family, -gamma, tol);
      Distribution q2 = tilt(p2, p2, p1, mu);
      return {0.0, kl(q2, p2), p1, q2, 0.0, mu};
    } catch (const InfeasibleError&) {
      return {0.0, kInf, p1, p2, 0.0, kInf};
    }
  }

  // gamma > range.hi: mirror of the branch above.
  const detail::TiltFamily family(p1, p1, p2);
  try {
    const double mu = detail::solve_gap_lambda(family, gamma, tol);
    Distribution q1 = tilt(p1, p1, p2, mu);
    return {kl(q1, p1), 0.0, q1, p2, mu, 0.0};
  } catch (const InfeasibleError&) {
    return {kInf, 0.0, p1, p2, kInf, 0.0};
  }
}

namespace {

// max over lambda in [0, cap] of lambda*sign_gamma - log_partition, growing
// cap while the objective still ascends. Returns +infinity when the growth
// never stalls (threshold beyond the attainable statistic range).
double dual_maximize(const detail::TiltFamily& family, double gamma,
                     const ToleranceConfig& tol) {
  const auto objective = [&](double lambda) {
    return lambda * gamma - family.log_partition(lambda);
  };
  double cap = 1.0;
  if (family.gap(cap) < gamma) {
    if (gamma >= family.c_max()) {
      return kInf;  // objective grows without bound
    }
    int doublings = 0;
    while (family.gap(cap) < gamma) {
      cap *= 2.0;
      if (++doublings > 60) {
        return kInf;
      }
    }
  }
  auto [lambda, value] = detail::maximize_concave(objective, 0.0, cap, tol);
  (void)lambda;
  return std::max(value, 0.0);  // lambda = 0 always yields 0
}

}  // namespace

double dual_exponent_1(const Distribution& p1, const Distribution& p2,
                       double gamma, const ToleranceConfig& tol) {
  tol.validate();
  const detail::TiltFamily family(p1, p1, p2);
  return dual_maximize(family, gamma, tol);
}

double dual_exponent_2(const Distribution& p1, const Distribution& p2,
                       double gamma, const ToleranceConfig& tol) {
  tol.validate();
  const detail::TiltFamily family(p2, p2, p1);
  return dual_maximize(family, -gamma, tol);
}

double stein_matched(const Distribution& p1, const Distribution& p2) {
  return kl(p1, p2);
}

std::optional<double> matched_e2_for_e1(const Distribution& p1,
                                        const Distribution& p2, double e1,
                                        const ToleranceConfig& tol) {
  tol.validate();
  if (e1 < 0.0) return std::nullopt;
  const double e1_max = kl(p2, p1);
  if (e1 > e1_max + tol.abs_tol) return std::nullopt;
  if (e1 >= e1_max) return 0.0;

  // kl(tilt(lambda), p1) rises monotonically from 0 to D(p2||p1) on [0, 1].
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < tol.max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    const Distribution q = tilt(p1, p1, p2, mid);
    if (kl(q, p1) < e1) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < tol.abs_tol) break;
  }
  const Distribution q = tilt(p1, p1, p2, 0.5 * (lo + hi));
  return kl(q, p2);
}

}  // namespace lrtx
