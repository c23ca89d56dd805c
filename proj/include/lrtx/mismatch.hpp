// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>

#include "lrtx/distribution.hpp"
#include "lrtx/lrt.hpp"

namespace lrtx {

/// A likelihood ratio test built from fixed test distributions (phat1, phat2)
/// and threshold gamma_hat. The decision regions are the two half-spaces
/// {llr_gap(Q) >= gamma_hat} (decide hypothesis 2) and {< gamma_hat}.
/// phat1 == phat2 is rejected: the statistic would be identically zero.
struct MismatchedTest {
  Distribution phat1;
  Distribution phat2;
  double gamma_hat = 0.0;

  MismatchedTest(Distribution phat1, Distribution phat2, double gamma_hat);
};

/// One half-space exponent: its value, the achieving distribution and the
/// tilt parameter that produces the achiever from the generating
/// distribution.
struct ExponentSolution {
  double exponent = 0.0;
  Distribution achiever;
  double lambda = 0.0;
};

/// Type-I exponent of the mismatched test under generating distribution p1:
/// min D(Q || p1) over {llr_gap(Q, phat1, phat2) >= gamma_hat}.
///
/// When llr_gap(p1) <= gamma_hat the achiever is the generalized tilt of p1
/// toward the test pair with lambda >= 0 solving the boundary equation;
/// otherwise p1 itself is feasible and the exponent is 0. Throws
/// InfeasibleError when gamma_hat >= max_x log(phat2/phat1) (empty region,
/// unbounded lambda).
ExponentSolution mismatched_exponent_1(const Distribution& p1,
                                       const MismatchedTest& test,
                                       const ToleranceConfig& tol = {});

/// Mirror image: min D(Q || p2) over {llr_gap <= gamma_hat}; the achiever is
/// the tilt of p2 with anchors swapped, positive branch when
/// llr_gap(p2) >= gamma_hat. Infeasible when gamma_hat <= min_x
/// log(phat2/phat1).
ExponentSolution mismatched_exponent_2(const Distribution& p2,
                                       const MismatchedTest& test,
                                       const ToleranceConfig& tol = {});

/// Dual forms of the mismatched exponents, derived from the Lagrangian of
/// the half-space program:
///   E1 = max_{l>=0} l*gamma_hat - log sum_x p1 * phat1^(-l) * phat2^l
///   E2 = max_{l>=0} -l*gamma_hat - log sum_x p2 * phat2^(-l) * phat1^l
/// These match the primal values to high accuracy (zero duality gap).
double mismatched_dual_1(const Distribution& p1, const MismatchedTest& test,
                         const ToleranceConfig& tol = {});
double mismatched_dual_2(const Distribution& p2, const MismatchedTest& test,
                         const ToleranceConfig& tol = {});

/// Alternative dual variants in which the exponentiated factor is the other
/// *generating* distribution rather than the test one:
///   E1 = max_{l>=0} l*gamma_hat - log sum_x p1 * phat1^(-l) * p2^l
///   E2 = max_{l>=0} -l*gamma_hat - log sum_x p2 * phat2^(-l) * p1^l
/// Kept for validation: they do not agree with the primal under genuine
/// mismatch (the tests demonstrate this), so the functions above are the
/// default route.
double mismatched_dual_1_cross(const Distribution& p1, const Distribution& p2,
                               const MismatchedTest& test,
                               const ToleranceConfig& tol = {});
double mismatched_dual_2_cross(const Distribution& p1, const Distribution& p2,
                               const MismatchedTest& test,
                               const ToleranceConfig& tol = {});

/// Result of checking whether a mismatched exponent pair lies on the matched
/// optimal tradeoff curve of the generating pair.
struct TiltedTestCheck {
  ExponentPair point;
  bool on_curve = false;
};

/// Builds the test pair from tilts of (p1, p2) at parameters lambda_a <
/// lambda_b, computes the mismatched exponent pair at gamma_hat, and checks
/// that it lands on the matched tradeoff curve (within 1e-6): test
/// distributions tilted with respect to the generating pair lose nothing.
TiltedTestCheck tilted_test_optimality_check(const Distribution& p1,
                                             const Distribution& p2,
                                             double lambda_a, double lambda_b,
                                             double gamma_hat,
                                             const ToleranceConfig& tol = {});

/// Variance of the per-symbol log likelihood ratio log(phat1/phat2) under
/// p1. Zero iff the ratio is constant on the alphabet. Drives the
/// finite-sample threshold correction below.
double llr_variance(const Distribution& p1, const Distribution& phat1,
                    const Distribution& phat2);
double llr_variance(const Distribution& p1, const MismatchedTest& test);

/// Fixed-error-rate (Stein) report for the mismatched test.
struct SteinReport {
  double threshold = 0.0;   // gamma_hat_n, with the 1/sqrt(n) correction
  double exponent = 0.0;    // type-II exponent at the limiting threshold
  double variance = 0.0;    // Var_p1 log(phat1/phat2)
  double c_hat2 = 0.0;      // -sqrt(V) * Phi^{-1}(epsilon)
};

/// Threshold achieving type-I error -> epsilon:
///   llr_gap(p1) + c_hat2 / sqrt(n),  c_hat2 = -sqrt(V) Phi^{-1}(epsilon).
/// Accepts epsilon in (0, 1/2]; epsilon = 1/2 gives the uncorrected
/// threshold.
double stein_threshold(const Distribution& p1, const Distribution& phat1,
                       const Distribution& phat2, double epsilon,
                       std::int64_t n);

/// Stein-regime report: the corrected threshold for blocklength n plus the
/// limiting type-II exponent min D(Q||p2) over {llr_gap <= llr_gap(p1)}.
/// The exponent never exceeds D(p1||p2) since p1 itself satisfies the
/// constraint. epsilon must lie in the open interval (0, 1/2).
SteinReport stein_mismatched(const Distribution& p1, const Distribution& p2,
                             const Distribution& phat1,
                             const Distribution& phat2, double epsilon,
                             std::int64_t n, const ToleranceConfig& tol = {});

/// Bayes (fixed-priors) exponent: min of the two mismatched exponents.
double bayes_exponent(const Distribution& p1, const Distribution& p2,
                      const MismatchedTest& test,
                      const ToleranceConfig& tol = {});

}  // namespace lrtx
