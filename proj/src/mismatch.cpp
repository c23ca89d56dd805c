// Apache License, Version 2.0, refer to LICENSE.txt
#include "lrtx/mismatch.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "internal/solvers.hpp"
#include "lrtx/divergence.hpp"
#include "lrtx/errors.hpp"
#include "lrtx/normal.hpp"

namespace lrtx {

MismatchedTest::MismatchedTest(Distribution p1_, Distribution p2_, double g)
    : phat1(std::move(p1_)), phat2(std::move(p2_)), gamma_hat(g) {
  if (phat1.alphabet_size() != phat2.alphabet_size()) {
    throw std::invalid_argument("MismatchedTest: alphabet sizes differ");
  }
  if (phat1 == phat2) {
    throw std::invalid_argument(
        "MismatchedTest: test distributions must differ (constant statistic)");
  }
  if (!std::isfinite(gamma_hat)) {
    throw std::invalid_argument("MismatchedTest: threshold must be finite");
  }
}

ExponentSolution mismatched_exponent_1(const Distribution& p1,
                                       const MismatchedTest& test,
                                       const ToleranceConfig& tol) {
  tol.validate();
  const detail::TiltFamily family(p1, test.phat1, test.phat2);
  if (test.gamma_hat >= family.c_max()) {
    throw InfeasibleError(
        "mismatched_exponent_1: threshold at or beyond max log(phat2/phat1); "
        "decision region is empty");
  }
  if (family.gap(0.0) > test.gamma_hat) {
    // p1 already lies in the hypothesis-2 region.
    return {0.0, p1, 0.0};
  }
  const double lambda = detail::solve_gap_lambda(family, test.gamma_hat, tol);
  Distribution q = tilt(p1, test.phat1, test.phat2, lambda);
  const double e = kl(q, p1);
  return {e, std::move(q), lambda};
}

ExponentSolution mismatched_exponent_2(const Distribution& p2,
                                       const MismatchedTest& test,
                                       const ToleranceConfig& tol) {
  tol.validate();
  // Swapped anchors flip the sign of the statistic, so the boundary equation
  // llr_gap(Q, phat1, phat2) = gamma_hat becomes a target of -gamma_hat.
  const detail::TiltFamily family(p2, test.phat2, test.phat1);
  if (-test.gamma_hat >= family.c_max()) {
    throw InfeasibleError(
        "mismatched_exponent_2: threshold at or below min log(phat2/phat1); "
        "decision region is empty");
  }
  if (family.gap(0.0) > -test.gamma_hat) {
    return {0.0, p2, 0.0};
  }
  const double lambda = detail::solve_gap_lambda(family, -test.gamma_hat, tol);
  Distribution q = tilt(p2, test.phat2, test.phat1, lambda);
  const double e = kl(q, p2);
  return {e, std::move(q), lambda};
}

namespace {

double dual_value(const detail::TiltFamily& family, double gamma,
                  const ToleranceConfig& tol) {
  const auto objective = [&](double lambda) {
    return lambda * gamma - family.log_partition(lambda);
  };
  if (gamma >= family.c_max()) {
    throw InfeasibleError("mismatched dual: objective unbounded in lambda");
  }
  double cap = 1.0;
  int doublings = 0;
  while (family.gap(cap) < gamma) {
    cap *= 2.0;
    if (++doublings > 60) {
      throw InfeasibleError("mismatched dual: bracket growth exhausted");
    }
  }
  auto [lambda, value] = detail::maximize_concave(objective, 0.0, cap, tol);
  (void)lambda;
  return std::max(value, 0.0);
}

}  // namespace

double mismatched_dual_1(const Distribution& p1, const MismatchedTest& test,
                         const ToleranceConfig& tol) {
  tol.validate();
  const detail::TiltFamily family(p1, test.phat1, test.phat2);
  return dual_value(family, test.gamma_hat, tol);
}

double mismatched_dual_2(const Distribution& p2, const MismatchedTest& test,
                         const ToleranceConfig& tol) {
  tol.validate();
  const detail::TiltFamily family(p2, test.phat2, test.phat1);
  return dual_value(family, -test.gamma_hat, tol);
}

double mismatched_dual_1_cross(const Distribution& p1, const Distribution& p2,
                               const MismatchedTest& test,
                               const ToleranceConfig& tol) {
  tol.validate();
  const detail::TiltFamily family(p1, test.phat1, p2);
  return dual_value(family, test.gamma_hat, tol);
}

double mismatched_dual_2_cross(const Distribution& p1, const Distribution& p2,
                               const MismatchedTest& test,
                               const ToleranceConfig& tol) {
  tol.validate();
  const detail::TiltFamily family(p2, test.phat2, p1);
  return dual_value(family, -test.gamma_hat, tol);
}

TiltedTestCheck tilted_test_optimality_check(const Distribution& p1,
                                             const Distribution& p2,
                                             double lambda_a, double lambda_b,
                                             double gamma_hat,
                                             const ToleranceConfig& tol) {
  if (!(lambda_a >= 0.0) || !(lambda_b <= 1.0) || !(lambda_a < lambda_b)) {
    throw std::invalid_argument(
        "tilted_test_optimality_check: need 0 <= lambda_a < lambda_b <= 1");
  }
  const MismatchedTest test(tilt(p1, p1, p2, lambda_a),
                            tilt(p1, p1, p2, lambda_b), gamma_hat);
  const ExponentSolution s1 = mismatched_exponent_1(p1, test, tol);
  const ExponentSolution s2 = mismatched_exponent_2(p2, test, tol);
  ExponentPair point{s1.exponent, s2.exponent, s1.achiever, s2.achiever,
                     s1.lambda, s2.lambda};

  bool on_curve = false;
  const auto e2_matched = matched_e2_for_e1(p1, p2, s1.exponent, tol);
  if (e2_matched.has_value()) {
    on_curve = std::abs(*e2_matched - s2.exponent) <= 1e-6;
  }
  return {std::move(point), on_curve};
}

double llr_variance(const Distribution& p1, const Distribution& phat1,
                    const Distribution& phat2) {
  if (p1.alphabet_size() != phat1.alphabet_size() ||
      p1.alphabet_size() != phat2.alphabet_size()) {
    throw std::invalid_argument("llr_variance: alphabet sizes differ");
  }
  double mean = 0.0, second = 0.0;
  for (std::size_t i = 0; i < p1.alphabet_size(); ++i) {
    const double r = std::log(phat1[i] / phat2[i]);
    mean += p1[i] * r;
    second += p1[i] * r * r;
  }
  return std::max(second - mean * mean, 0.0);
}

double llr_variance(const Distribution& p1, const MismatchedTest& test) {
  return llr_variance(p1, test.phat1, test.phat2);
}

double stein_threshold(const Distribution& p1, const Distribution& phat1,
                       const Distribution& phat2, double epsilon,
                       std::int64_t n) {
  if (!(epsilon > 0.0) || !(epsilon <= 0.5)) {
    throw std::invalid_argument("stein_threshold: epsilon must lie in (0, 1/2]");
  }
  if (n < 1) {
    throw std::invalid_argument("stein_threshold: n must be >= 1");
  }
  const double v = llr_variance(p1, phat1, phat2);
  const double c2 = epsilon == 0.5 ? 0.0 : -std::sqrt(v) * inverse_normal_cdf(epsilon);
  return llr_gap(p1, phat1, phat2) + c2 / std::sqrt(static_cast<double>(n));
}

SteinReport stein_mismatched(const Distribution& p1, const Distribution& p2,
                             const Distribution& phat1,
                             const Distribution& phat2, double epsilon,
                             std::int64_t n, const ToleranceConfig& tol) {
  if (!(epsilon > 0.0) || !(epsilon < 0.5)) {
    throw std::invalid_argument("stein_mismatched: epsilon must lie in (0, 1/2)");
  }
  if (n < 1) {
    throw std::invalid_argument("stein_mismatched: n must be >= 1");
  }
  const double v = llr_variance(p1, phat1, phat2);
  const double c2 = -std::sqrt(v) * inverse_normal_cdf(epsilon);
  const double gamma_limit = llr_gap(p1, phat1, phat2);
  const double threshold = gamma_limit + c2 / std::sqrt(static_cast<double>(n));

  // The exponent is evaluated at the limiting threshold; the 1/sqrt(n)
  // correction vanishes and only shifts the finite-n operating point.
  const MismatchedTest test(phat1, phat2, gamma_limit);
  const ExponentSolution s2 = mismatched_exponent_2(p2, test, tol);
  return {threshold, s2.exponent, v, c2};
}

double bayes_exponent(const Distribution& p1, const Distribution& p2,
                      const MismatchedTest& test, const ToleranceConfig& tol) {
  const double e1 = mismatched_exponent_1(p1, test, tol).exponent;
  const double e2 = mismatched_exponent_2(p2, test, tol).exponent;
  return std::min(e1, e2);
}

}  // namespace lrtx
