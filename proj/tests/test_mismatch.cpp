// Apache License, Version 2.0, refer to LICENSE.txt
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "lrtx/divergence.hpp"
#include "lrtx/errors.hpp"
#include "lrtx/lrt.hpp"
#include "lrtx/mismatch.hpp"
#include "lrtx/normal.hpp"
#include "test_util.hpp"

using namespace lrtx;

namespace {
const Distribution kP1 = Distribution::bernoulli(0.1);
const Distribution kP2 = Distribution::bernoulli(0.8);
}  // namespace

TEST_CASE("MismatchedTest rejects a constant statistic") {
  CHECK_THROWS_AS(MismatchedTest(kP1, kP1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(MismatchedTest(kP1, Distribution({0.5, 0.3, 0.2}), 0.0),
                  std::invalid_argument);
  CHECK_NOTHROW(MismatchedTest(kP1, kP2, 0.0));
}

TEST_CASE("identity mismatch reproduces the matched exponents") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 20; ++i) {
    const Distribution a = lrtx_test::random_distribution(rng, 3);
    const Distribution b = lrtx_test::random_distribution(rng, 3);
    const double gamma = lrtx_test::random_gamma_in_range(rng, a, b);
    const ExponentPair matched = matched_exponents(a, b, gamma);
    const MismatchedTest test(a, b, gamma);
    const ExponentSolution s1 = mismatched_exponent_1(a, test);
    const ExponentSolution s2 = mismatched_exponent_2(b, test);
    CHECK(s1.exponent == doctest::Approx(matched.e1).epsilon(1e-9));
    CHECK(s2.exponent == doctest::Approx(matched.e2).epsilon(1e-9));
  }
}

TEST_CASE("boundary threshold gives a zero exponent") {
  const Distribution p1({0.7, 0.3});
  const MismatchedTest at_p1(kP1, kP2, llr_gap(p1, kP1, kP2));
  const ExponentSolution s1 = mismatched_exponent_1(p1, at_p1);
  CHECK(s1.exponent == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(s1.lambda == doctest::Approx(0.0).epsilon(1e-8));

  const Distribution p2({0.35, 0.65});
  const MismatchedTest at_p2(kP1, kP2, llr_gap(p2, kP1, kP2));
  const ExponentSolution s2 = mismatched_exponent_2(p2, at_p2);
  CHECK(s2.exponent == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("zero branch: generating distribution inside the error region") {
  // llr_gap(p1) > gamma_hat: p1 is its own achiever.
  const Distribution p1({0.3, 0.7});
  const MismatchedTest test(kP1, kP2, 0.0);
  CHECK(llr_gap(p1, kP1, kP2) > 0.0);
  const ExponentSolution s1 = mismatched_exponent_1(p1, test);
  CHECK(s1.exponent == 0.0);
  CHECK(s1.achiever == p1);
  CHECK(s1.lambda == 0.0);
}

TEST_CASE("infeasible thresholds throw") {
  const double sup = std::log(kP2[1] / kP1[1]);  // max log ratio
  CHECK_THROWS_AS(
      mismatched_exponent_1(kP1, MismatchedTest(kP1, kP2, sup + 0.1)),
      InfeasibleError);
  const double inf = std::log(kP2[0] / kP1[0]);  // min log ratio
  CHECK_THROWS_AS(
      mismatched_exponent_2(kP2, MismatchedTest(kP1, kP2, inf - 0.1)),
      InfeasibleError);
}

TEST_CASE("achievers have the generalized tilt form") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 20; ++i) {
    const Distribution p1 = lrtx_test::random_distribution(rng, 3);
    const Distribution h1 = lrtx_test::random_distribution(rng, 3);
    const Distribution h2 = lrtx_test::random_distribution(rng, 3);
    const double base_gap = llr_gap(p1, h1, h2);
    const MismatchedTest test(h1, h2, base_gap + 0.05);
    const ExponentSolution s = mismatched_exponent_1(p1, test);
    if (s.exponent <= 0.0) continue;
    CHECK(llr_gap(s.achiever, h1, h2) ==
          doctest::Approx(test.gamma_hat).epsilon(1e-9));
    // Reconstruct the achiever from the reported lambda.
    const Distribution rebuilt = tilt(p1, h1, h2, s.lambda);
    for (int j = 0; j < 3; ++j) {
      CHECK(rebuilt[j] == doctest::Approx(s.achiever[j]).epsilon(1e-9));
    }
  }
}

TEST_CASE("mismatched exponents are monotone in the threshold") {
  const Distribution p1({0.85, 0.15});
  const Distribution p2({0.25, 0.75});
  const MismatchedTest probe(kP1, kP2, 0.0);
  const double lo = -1.0, hi = 1.2;
  double prev1 = -1.0, prev2 = 1e9;
  for (int i = 0; i <= 50; ++i) {
    const double gamma = lo + (hi - lo) * i / 50;
    const MismatchedTest test(probe.phat1, probe.phat2, gamma);
    const double e1 = mismatched_exponent_1(p1, test).exponent;
    const double e2 = mismatched_exponent_2(p2, test).exponent;
    CHECK(e1 >= prev1 - 1e-10);
    CHECK(e2 <= prev2 + 1e-10);
    prev1 = e1;
    prev2 = e2;
  }
}

TEST_CASE("dual equals primal; the cross variant does not") {
  std::mt19937_64 rng(47);
  double worst_cross_dev = 0.0;
  for (int i = 0; i < 20; ++i) {
    const std::size_t k = 2 + (i % 2);
    const Distribution p1 = lrtx_test::random_distribution(rng, k);
    const Distribution p2 = lrtx_test::random_distribution(rng, k);
    const Distribution h1 = lrtx_test::random_distribution(rng, k);
    const Distribution h2 = lrtx_test::random_distribution(rng, k);
    const double gamma = llr_gap(p1, h1, h2) + 0.08;
    const MismatchedTest test(h1, h2, gamma);

    const double e1 = mismatched_exponent_1(p1, test).exponent;
    CHECK(std::abs(mismatched_dual_1(p1, test) - e1) <= 1e-8);
    const double e2 = mismatched_exponent_2(p2, test).exponent;
    CHECK(std::abs(mismatched_dual_2(p2, test) - e2) <= 1e-8);

    try {
      worst_cross_dev = std::max(
          worst_cross_dev, std::abs(mismatched_dual_1_cross(p1, p2, test) - e1));
    } catch (const InfeasibleError&) {
      worst_cross_dev = std::numeric_limits<double>::infinity();
    }
  }
  // The variant with the generating pair in the partition sum disagrees with
  // the primal under genuine mismatch (and can even be unbounded).
  CHECK(worst_cross_dev > 1e-3);
}

TEST_CASE("dual is zero at the boundary threshold") {
  const Distribution p1({0.8, 0.2});
  const MismatchedTest test(kP1, kP2, llr_gap(p1, kP1, kP2));
  CHECK(mismatched_dual_1(p1, test) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("tilted test distributions stay on the matched tradeoff curve") {
  // Identity endpoints: the test pair is the generating pair itself.
  const TiltedTestCheck identity =
      tilted_test_optimality_check(kP1, kP2, 0.0, 1.0, 0.0);
  CHECK(identity.on_curve);

  const TiltedTestCheck tilted =
      tilted_test_optimality_check(kP1, kP2, 0.2, 0.7, 0.0);
  CHECK(tilted.on_curve);
  CHECK(tilted.point.e1 > 0.0);
  CHECK(tilted.point.e2 > 0.0);
}

TEST_CASE("non-tilted test pairs generally leave the curve") {
  // On a binary alphabet every interior pair is a tilt of every other, so
  // counterexamples need three symbols. Coarse search over perturbed phat1.
  const Distribution p1({0.6, 0.3, 0.1});
  const Distribution p2({0.1, 0.3, 0.6});
  bool found_off_curve = false;
  for (const double a : {0.3, 0.4, 0.5, 0.6}) {
    const MismatchedTest test(Distribution({a, 1.0 - a - 0.3, 0.3}),
                              Distribution({0.2, 0.5, 0.3}), 0.0);
    const ExponentSolution s1 = mismatched_exponent_1(p1, test);
    const ExponentSolution s2 = mismatched_exponent_2(p2, test);
    const auto e2_matched = matched_e2_for_e1(p1, p2, s1.exponent);
    if (!e2_matched.has_value() || std::abs(*e2_matched - s2.exponent) > 1e-4) {
      found_off_curve = true;
    }
  }
  CHECK(found_off_curve);
}

TEST_CASE("llr_variance fixed value and symmetry") {
  CHECK(llr_variance(kP1, kP1, kP2) ==
        doctest::Approx(1.1557447184046245).epsilon(1e-12));
  // Constant log ratio: variance zero.
  const Distribution u({0.5, 0.5});
  CHECK(llr_variance(kP1, u, u) == 0.0);
  // Permuting the alphabet leaves the variance unchanged.
  const Distribution p1r({0.1, 0.9});
  const Distribution h1r({0.1, 0.9});
  const Distribution h2r({0.8, 0.2});
  CHECK(llr_variance(p1r, h1r, h2r) ==
        doctest::Approx(llr_variance(kP1, kP1, kP2)).epsilon(1e-13));
}

TEST_CASE("inverse_normal_cdf reference quantiles") {
  CHECK(inverse_normal_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(inverse_normal_cdf(0.975) ==
        doctest::Approx(1.9599639845400545).epsilon(1e-9));
  CHECK(inverse_normal_cdf(0.1) ==
        doctest::Approx(-1.2815515655446004).epsilon(1e-9));
  CHECK(inverse_normal_cdf(0.01) ==
        doctest::Approx(-2.3263478740408408).epsilon(1e-9));
  CHECK_THROWS_AS(inverse_normal_cdf(0.0), std::domain_error);
  CHECK_THROWS_AS(inverse_normal_cdf(1.0), std::domain_error);
}

TEST_CASE("stein_threshold: epsilon = 1/2 removes the correction") {
  const double g = stein_threshold(kP1, kP1, kP2, 0.5, 1000);
  CHECK(g == doctest::Approx(llr_gap(kP1, kP1, kP2)).epsilon(1e-12));
  CHECK_THROWS_AS(stein_threshold(kP1, kP1, kP2, 0.6, 100), std::invalid_argument);
}

TEST_CASE("stein_mismatched identity and strict mismatch") {
  // Identity mismatch: the exponent is exactly D(p1 || p2).
  const SteinReport identity = stein_mismatched(kP1, kP2, kP1, kP2, 0.1, 2000);
  CHECK(identity.exponent == doctest::Approx(kl(kP1, kP2)).epsilon(1e-9));
  CHECK(identity.variance ==
        doctest::Approx(1.1557447184046245).epsilon(1e-12));
  CHECK(identity.c_hat2 > 0.0);
  CHECK(identity.threshold > llr_gap(kP1, kP1, kP2));

  // A mismatched pair where the exponent is strictly below D(p1 || p2). On a
  // binary alphabet the constraint boundary is the single point p1 and
  // equality always holds, so the strict case needs three symbols.
  const Distribution p1({0.5, 0.3, 0.2});
  const Distribution h1({0.6, 0.25, 0.15});
  const Distribution h2({0.2, 0.3, 0.5});
  const SteinReport strict = stein_mismatched(p1, h2, h1, h2, 0.1, 2000);
  CHECK(strict.exponent < kl(p1, h2) - 1e-4);
  CHECK(strict.exponent > 0.0);

  CHECK_THROWS_AS(stein_mismatched(kP1, kP2, kP1, kP2, 0.5, 100),
                  std::invalid_argument);
  CHECK_THROWS_AS(stein_mismatched(kP1, kP2, kP1, kP2, -0.1, 100),
                  std::invalid_argument);
}

TEST_CASE("stein threshold approaches its limit as n grows") {
  const Distribution p1({0.85, 0.15});
  const double limit = llr_gap(p1, kP1, kP2);
  double prev_gap = 1e9;
  for (const std::int64_t n : {10, 100, 1000, 10000}) {
    const SteinReport rep = stein_mismatched(p1, kP2, kP1, kP2, 0.1, n);
    const double gap = std::abs(rep.threshold - limit);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
}

TEST_CASE("bayes_exponent") {
  const MismatchedTest test(kP1, kP2, 0.0);
  const double e1 = mismatched_exponent_1(kP1, test).exponent;
  const double e2 = mismatched_exponent_2(kP2, test).exponent;
  CHECK(bayes_exponent(kP1, kP2, test) == doctest::Approx(std::min(e1, e2)));

  // Threshold at the zero-exponent boundary for hypothesis 1.
  const MismatchedTest boundary(kP1, kP2, llr_gap(kP1, kP1, kP2));
  CHECK(bayes_exponent(kP1, kP2, boundary) == doctest::Approx(0.0).epsilon(1e-10));
}
