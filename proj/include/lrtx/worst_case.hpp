// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <atomic>

#include "lrtx/distribution.hpp"
#include "lrtx/mismatch.hpp"

namespace lrtx {

/// Relative-entropy uncertainty ball {P : D(center || P) <= radius}.
/// Note the argument order: the center sits first in the divergence.
struct KlBall {
  Distribution center;
  double radius = 0.0;

  KlBall(Distribution center, double radius);
  bool contains(std::span<const double> p) const;
};

enum class ExtremeDirection { maximize, minimize };

struct BallExtreme {
  double value = 0.0;
  Distribution arg;
  /// True when the optimizer pressed against the numeric floor (1e-12) on
  /// some simplex coordinate and was clamped.
  bool clamped = false;
};

/// Extremizes the linear functional P -> llr_gap(P, phat1, phat2) over the
/// ball. The stationary family is P(x) = mu * center(x) / (nu - c(x)) with
/// c = log(phat2/phat1); the scalar nu is found by 1-D root finding on the
/// active radius constraint. Evaluates the feasibility conditions that
/// separate positive worst-case exponents from zero ones.
BallExtreme ball_llr_extreme(const Distribution& phat1,
                             const Distribution& phat2, const KlBall& ball,
                             ExtremeDirection direction,
                             const ToleranceConfig& tol = {});

enum class WcStatus { interior, zero_exponent, center_degenerate };

const char* to_string(WcStatus status);

/// Solution of a worst-case exponent problem: the least favorable generating
/// distribution, the optimizing half-space distribution, the multipliers and
/// the exponent value. At an interior solution
///   q_opt  = tilt(p_least, anchors, lambda)      (stationarity)
///   p_least = beta * q_opt + (1 - beta) * center (mixture identity)
///   llr_gap(q_opt) = gamma_hat, D(center || p_least) = R (active constraints)
/// all hold to solver accuracy, and exponent = kl(q_opt, p_least).
struct WorstCaseSolution {
  double exponent = 0.0;
  Distribution p_least;
  Distribution q_opt;
  double lambda = 0.0;
  double beta = 0.0;
  WcStatus status = WcStatus::interior;
};

/// Worst-case type-I exponent over generating distributions within radius r1
/// of phat1: min over P in the ball, Q in {llr_gap >= gamma_hat} of D(Q||P).
///
/// Solved by nested iteration: outer bisection on beta targeting the active
/// radius constraint; inner alternation of the boundary tilt (lambda
/// re-bisected each pass) with the mixture update, damped on oscillation.
/// When the ball already crosses the decision boundary the exponent is zero
/// and p_least is the crossing witness. r1 = 0 reduces exactly to
/// mismatched_exponent_1 with the center generating the data.
///
/// The optional cancel flag is checked once per outer iteration; a set flag
/// aborts with SolverError.
WorstCaseSolution worst_case_exponent_1(const Distribution& phat1,
                                        const Distribution& phat2,
                                        double gamma_hat, double r1,
                                        const ToleranceConfig& opts = {},
                                        const std::atomic<bool>* cancel = nullptr);

/// Mirror problem for the type-II exponent (tilt anchors swapped, ball
/// centered at phat2, feasibility via the ball minimum of the statistic).
WorstCaseSolution worst_case_exponent_2(const Distribution& phat1,
                                        const Distribution& phat2,
                                        double gamma_hat, double r2,
                                        const ToleranceConfig& opts = {},
                                        const std::atomic<bool>* cancel = nullptr);

/// Smallest radius at which the worst-case exponent of the given hypothesis
/// collapses to zero (the ball reaches the decision boundary), found by
/// bisection on the feasibility condition to +-1e-8. Returns +infinity when
/// no radius up to 50 nats ever crosses.
double critical_radius(const Distribution& phat1, const Distribution& phat2,
                       double gamma_hat, int hypothesis,
                       const ToleranceConfig& tol = {});

}  // namespace lrtx
