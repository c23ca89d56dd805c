// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <optional>

#include "lrtx/distribution.hpp"

namespace lrtx {

/// Closed interval of thresholds for which the matched likelihood ratio test
/// has two strictly positive exponents: [-D(p1||p2), D(p2||p1)].
struct ThresholdRange {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double gamma) const { return gamma >= lo && gamma <= hi; }
};

ThresholdRange threshold_range(const Distribution& p1, const Distribution& p2);

/// A type-I/type-II exponent pair with the achieving distributions and the
/// tilt parameters that produce them. lambda1 parametrizes tilts of p1 toward
/// p2, lambda2 tilts of p2 toward p1; both are nonnegative.
struct ExponentPair {
  double e1 = 0.0;
  double e2 = 0.0;
  Distribution q1;
  Distribution q2;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

/// Solves llr_gap(tilt(p1, p1, p2, lambda), p1, p2) = gamma for
/// lambda in [0, 1] by bisection on the strictly increasing gap map.
/// Throws std::range_error naming the violated endpoint when gamma lies
/// outside threshold_range(p1, p2).
double solve_lambda_matched(const Distribution& p1, const Distribution& p2,
                            double gamma, const ToleranceConfig& tol = {});

/// Matched likelihood-ratio-test exponents at threshold gamma.
///
/// For gamma in range both achievers coincide at the common tilted
/// distribution. Below the range e1 = 0 with q1 = p1; above it e2 = 0 with
/// q2 = p2; the surviving exponent is still solved on the constraint
/// boundary. A threshold at or beyond the extreme per-symbol log ratio makes
/// the corresponding decision region unreachable and the exponent infinite;
/// the achiever field is then not meaningful.
ExponentPair matched_exponents(const Distribution& p1, const Distribution& p2,
                               double gamma, const ToleranceConfig& tol = {});

/// Dual (Chernoff-style) forms:
///   E1 = max_{lambda >= 0} lambda*gamma - log sum_x p1^(1-lambda) p2^lambda
///   E2 = max_{lambda >= 0} -lambda*gamma - log sum_x p1^lambda p2^(1-lambda)
/// Concave 1-D maximizations; for gamma in range the optimum lies in [0, 1],
/// otherwise the search interval is grown geometrically. Both equal the
/// primal values (zero duality gap).
double dual_exponent_1(const Distribution& p1, const Distribution& p2,
                       double gamma, const ToleranceConfig& tol = {});
double dual_exponent_2(const Distribution& p1, const Distribution& p2,
                       double gamma, const ToleranceConfig& tol = {});

/// Best type-II exponent with the type-I error held below a constant:
/// D(p1 || p2).
double stein_matched(const Distribution& p1, const Distribution& p2);

/// Matched type-II exponent on the optimal tradeoff curve at type-I exponent
/// e1, found by bisecting the tilt parameter. Empty when e1 is negative or
/// exceeds D(p2||p1) (no such point on the curve).
std::optional<double> matched_e2_for_e1(const Distribution& p1,
                                        const Distribution& p2, double e1,
                                        const ToleranceConfig& tol = {});

}  // namespace lrtx
