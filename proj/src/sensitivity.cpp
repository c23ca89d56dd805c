// Apache License, Version 2.0, refer to LICENSE.txt
#include "lrtx/sensitivity.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lrtx/divergence.hpp"
#include "lrtx/lrt.hpp"

namespace lrtx {

SensitivityReport sensitivity_coefficients(const Distribution& phat1,
                                           const Distribution& phat2,
                                           double gamma_hat,
                                           const ToleranceConfig& tol) {
  const double lambda = solve_lambda_matched(phat1, phat2, gamma_hat, tol);
  Distribution q = tilt(phat1, phat1, phat2, lambda);
  // chi_squared rounds to a tiny negative when q coincides with the anchor.
  const double s1 = std::sqrt(std::max(2.0 * chi_squared(q, phat1), 0.0));
  const double s2 = std::sqrt(std::max(2.0 * chi_squared(q, phat2), 0.0));
  const double e1 = kl(q, phat1);
  const double e2 = kl(q, phat2);
  return {s1, s2, lambda, std::move(q), e1, e2};
}

double taylor_worst_case(const Distribution& phat1, const Distribution& phat2,
                         double gamma_hat, double r, int hypothesis,
                         bool clamp, const ToleranceConfig& tol) {
  if (hypothesis != 1 && hypothesis != 2) {
    throw std::invalid_argument("taylor_worst_case: hypothesis must be 1 or 2");
  }
  if (!(r >= 0.0)) {
    throw std::invalid_argument("taylor_worst_case: radius must be >= 0");
  }
  const SensitivityReport rep = sensitivity_coefficients(phat1, phat2, gamma_hat, tol);
  const double e = hypothesis == 1 ? rep.e1 : rep.e2;
  const double s = hypothesis == 1 ? rep.s1 : rep.s2;
  const double raw = e - s * std::sqrt(r);
  return clamp ? std::max(raw, 0.0) : raw;
}

QuadraticResult quadratic_worst_case(const Distribution& phat1,
                                     const Distribution& phat2,
                                     double gamma_hat, double r,
                                     int hypothesis,
                                     const ToleranceConfig& tol) {
  if (hypothesis != 1 && hypothesis != 2) {
    throw std::invalid_argument("quadratic_worst_case: hypothesis must be 1 or 2");
  }
  if (!(r >= 0.0)) {
    throw std::invalid_argument("quadratic_worst_case: radius must be >= 0");
  }
  const SensitivityReport rep = sensitivity_coefficients(phat1, phat2, gamma_hat, tol);
  const Distribution& phat = hypothesis == 1 ? phat1 : phat2;
  const double e = hypothesis == 1 ? rep.e1 : rep.e2;
  const std::size_t k = phat.alphabet_size();

  QuadraticModel model;
  model.fisher_diag.resize(k);
  model.gradient.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    model.fisher_diag[i] = 1.0 / phat[i];
    model.gradient[i] = -rep.q_tilt[i] / phat[i];
  }

  // psi = J^{-1} (grad - (1' J^{-1} grad / 1' J^{-1} 1) 1): the natural
  // gradient projected onto the simplex tangent. Degenerate when grad is a
  // multiple of the all-ones vector, i.e. q_tilt == phat.
  double weighted_grad = 0.0;
  double weight_total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    weighted_grad += model.gradient[i] / model.fisher_diag[i];
    weight_total += 1.0 / model.fisher_diag[i];
  }
  const double shift = weighted_grad / weight_total;
  model.psi.resize(k);
  double psi_norm2 = 0.0;  // psi' J psi
  for (std::size_t i = 0; i < k; ++i) {
    model.psi[i] = (model.gradient[i] - shift) / model.fisher_diag[i];
    psi_norm2 += model.psi[i] * model.psi[i] * model.fisher_diag[i];
  }
  if (psi_norm2 < 1e-24) {
    throw std::domain_error(
        "quadratic_worst_case: gradient proportional to the all-ones vector "
        "(achiever equals the test distribution; threshold endpoint)");
  }

  model.theta.resize(k);
  double descent = 0.0;  // theta' grad
  const double scale = std::sqrt(2.0 * r / psi_norm2);
  for (std::size_t i = 0; i < k; ++i) {
    model.theta[i] = -model.psi[i] * scale;
    descent += model.theta[i] * model.gradient[i];
  }
  return {e + descent, std::move(model)};
}

std::vector<SensitivityRow> sensitivity_monotonicity_scan(
    const Distribution& phat1, const Distribution& phat2, int grid_points,
    const ToleranceConfig& tol) {
  if (grid_points < 3) {
    throw std::invalid_argument("sensitivity_monotonicity_scan: need >= 3 points");
  }
  const ThresholdRange range = threshold_range(phat1, phat2);
  std::vector<SensitivityRow> rows;
  rows.reserve(static_cast<std::size_t>(grid_points));
  // Uniform grid strictly inside the open interval: the endpoints are the
  // degenerate lambda in {0, 1} corners.
  for (int i = 1; i <= grid_points; ++i) {
    const double frac = static_cast<double>(i) / (grid_points + 1);
    const double gamma = range.lo + frac * (range.hi - range.lo);
    const SensitivityReport rep =
        sensitivity_coefficients(phat1, phat2, gamma, tol);
    rows.push_back({gamma, rep.s1, rep.s2, rep.lambda, rep.e1, rep.e2});
  }
  return rows;
}

}  // namespace lrtx
