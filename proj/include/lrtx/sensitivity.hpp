// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <vector>

#include "lrtx/distribution.hpp"

namespace lrtx {

/// Sensitivity coefficients of the worst-case exponents at radius zero:
/// s_i^2 = 2 Var_{phat_i}(q_tilt(X)/phat_i(X)) = 2 * chi_squared(q_tilt,
/// phat_i), with q_tilt the matched tilted achiever for the test pair at
/// gamma_hat. e1/e2 are the exponents at radius zero.
struct SensitivityReport {
  double s1 = 0.0;
  double s2 = 0.0;
  double lambda = 0.0;
  Distribution q_tilt;
  double e1 = 0.0;
  double e2 = 0.0;
};

SensitivityReport sensitivity_coefficients(const Distribution& phat1,
                                           const Distribution& phat2,
                                           double gamma_hat,
                                           const ToleranceConfig& tol = {});

/// First-order expansion of the worst-case exponent in the ball radius:
/// E_i - S_i * sqrt(r), clamped at zero by default (exponents are
/// nonnegative; the expansion itself is only asymptotic).
double taylor_worst_case(const Distribution& phat1, const Distribution& phat2,
                         double gamma_hat, double r, int hypothesis,
                         bool clamp = true, const ToleranceConfig& tol = {});

/// Local quadratic model of the worst-case program: minimize the linearized
/// exponent over simplex-tangent perturbations theta with
/// (1/2) theta' J theta <= r, where J = diag(1/phat(x)) is the categorical
/// Fisher information. Solved in closed form.
struct QuadraticModel {
  std::vector<double> fisher_diag;  // 1 / phat(x)
  std::vector<double> gradient;     // d(exponent)/d(phat(x)) = -q_tilt/phat
  std::vector<double> psi;          // centered natural-gradient direction
  std::vector<double> theta;        // optimal perturbation, sums to zero
};

struct QuadraticResult {
  double value = 0.0;
  QuadraticModel model;
};

/// The quadratic program collapses analytically to the sqrt(r) expansion:
/// value == E_i - S_i sqrt(r) to near machine precision. Throws
/// std::domain_error when the gradient is proportional to the all-ones
/// vector (q_tilt == phat_i, the degenerate endpoint).
QuadraticResult quadratic_worst_case(const Distribution& phat1,
                                     const Distribution& phat2,
                                     double gamma_hat, double r,
                                     int hypothesis,
                                     const ToleranceConfig& tol = {});

struct SensitivityRow {
  double gamma_hat = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double lambda = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;
};

/// Evaluates the coefficients on a uniform gamma_hat grid strictly inside
/// the threshold range. s1 is nondecreasing and s2 nonincreasing along the
/// grid; they cross at the lambda = 1/2 threshold.
std::vector<SensitivityRow> sensitivity_monotonicity_scan(
    const Distribution& phat1, const Distribution& phat2, int grid_points,
    const ToleranceConfig& tol = {});

}  // namespace lrtx
