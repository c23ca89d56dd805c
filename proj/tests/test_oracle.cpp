// Apache License, Version 2.0, refer to LICENSE.txt
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lrtx/divergence.hpp"
#include "lrtx/errors.hpp"
#include "lrtx/mismatch.hpp"
#include "lrtx/oracle.hpp"
#include "lrtx/worst_case.hpp"

using namespace lrtx;
using namespace lrtx::oracle;

namespace {
const Distribution kH1 = Distribution::bernoulli(0.1);
const Distribution kH2 = Distribution::bernoulli(0.8);
}  // namespace

TEST_CASE("GridSpec and SimulationConfig validation") {
  GridSpec bad;
  bad.points_per_dim = 1;
  CHECK_THROWS_AS(bad.validate(2), std::invalid_argument);
  GridSpec bad_floor;
  bad_floor.floor = 0.6;
  CHECK_THROWS_AS(bad_floor.validate(2), std::invalid_argument);
  SimulationConfig bad_sim;
  bad_sim.trials = 0;
  CHECK_THROWS_AS(bad_sim.validate(), std::invalid_argument);
}

TEST_CASE("grid_min_kl_halfspace: feasible generating point gives ~0") {
  const Distribution p({0.7, 0.3});
  const MismatchedTest test(kH1, kH2, llr_gap(p, kH1, kH2));
  GridSpec grid;
  grid.points_per_dim = 200000;
  const GridMin res = grid_min_kl_halfspace(p, test, HalfspaceSide::geq, grid);
  CHECK(res.value <= 1e-8);
  CHECK(res.argmin[1] == doctest::Approx(p[1]).epsilon(1e-4));
}

TEST_CASE("grid oracle certifies the binary half-space solvers") {
  const Distribution p1({0.9, 0.1});
  const MismatchedTest test(Distribution({0.8, 0.2}), Distribution({0.3, 0.7}),
                            0.0);
  GridSpec grid;
  grid.points_per_dim = 1000000;
  const GridMin g1 = grid_min_kl_halfspace(p1, test, HalfspaceSide::geq, grid);
  const ExponentSolution s1 = mismatched_exponent_1(p1, test);
  CHECK(std::abs(g1.value - s1.exponent) <= 1e-6);

  const Distribution p2({0.25, 0.75});
  const GridMin g2 = grid_min_kl_halfspace(p2, test, HalfspaceSide::leq, grid);
  const ExponentSolution s2 = mismatched_exponent_2(p2, test);
  CHECK(std::abs(g2.value - s2.exponent) <= 1e-6);
}

TEST_CASE("grid oracle certifies a ternary instance") {
  const Distribution p1({0.5, 0.3, 0.2});
  const MismatchedTest test(Distribution({0.6, 0.25, 0.15}),
                            Distribution({0.2, 0.3, 0.5}), 0.1);
  GridSpec grid;
  grid.points_per_dim = 1000;
  const GridMin g = grid_min_kl_halfspace(p1, test, HalfspaceSide::geq, grid);
  const ExponentSolution s = mismatched_exponent_1(p1, test);
  CHECK(std::abs(g.value - s.exponent) <= 1e-4);
}

TEST_CASE("grid oracle rejects unsupported sizes and empty regions") {
  const Distribution p4({0.25, 0.25, 0.25, 0.25});
  const MismatchedTest test4(Distribution({0.4, 0.2, 0.2, 0.2}),
                             Distribution({0.1, 0.3, 0.3, 0.3}), 0.0);
  GridSpec grid;
  CHECK_THROWS_AS(grid_min_kl_halfspace(p4, test4, HalfspaceSide::geq, grid),
                  std::invalid_argument);

  // Threshold above every grid point's statistic: empty feasible set.
  const MismatchedTest empty(kH1, kH2, std::log(kH2[1] / kH1[1]) + 1.0);
  CHECK_THROWS_AS(grid_min_kl_halfspace(kH1, empty, HalfspaceSide::geq, grid),
                  InfeasibleError);
}

TEST_CASE("refinement convergence: doubling the density moves the min very little") {
  const Distribution p1({0.9, 0.1});
  const MismatchedTest test(Distribution({0.8, 0.2}), Distribution({0.3, 0.7}),
                            0.0);
  GridSpec coarse;
  coarse.points_per_dim = 1000;
  GridSpec fine;
  fine.points_per_dim = 2000;
  const double v_coarse =
      grid_min_kl_halfspace(p1, test, HalfspaceSide::geq, coarse).value;
  const double v_fine =
      grid_min_kl_halfspace(p1, test, HalfspaceSide::geq, fine).value;
  // Bound: a few gradient-scaled spacings of the coarse grid.
  CHECK(std::abs(v_coarse - v_fine) <= 5.0 / 1000.0);
}

TEST_CASE("grid_worst_case collapses at radius zero and decreases with r") {
  GridSpec grid;
  grid.points_per_dim = 2000;
  const GridWorstCase at_zero = grid_worst_case(kH1, kH2, 0.0, 0.0, 1, grid);
  const GridMin half =
      grid_min_kl_halfspace(kH1, MismatchedTest(kH1, kH2, 0.0),
                            HalfspaceSide::geq, grid);
  CHECK(at_zero.value == doctest::Approx(half.value).epsilon(1e-12));

  double prev = at_zero.value;
  for (const double r : {0.001, 0.005, 0.01}) {
    const double v = grid_worst_case(kH1, kH2, 0.0, r, 1, grid).value;
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
}

TEST_CASE("grid_worst_case certifies the fixed-point solver") {
  GridSpec grid;
  grid.points_per_dim = 2000;
  for (const int hyp : {1, 2}) {
    const double solver =
        (hyp == 1 ? worst_case_exponent_1(kH1, kH2, 0.0, 0.005)
                  : worst_case_exponent_2(kH1, kH2, 0.0, 0.005))
            .exponent;
    const double gridval = grid_worst_case(kH1, kH2, 0.0, 0.005, hyp, grid).value;
    CHECK(std::abs(solver - gridval) <= 1e-4);
  }
}

TEST_CASE("exact_error_probs: single-sample hand enumeration") {
  // Identity mismatch at gamma = 0: symbol 1 decides hypothesis 2.
  const FiniteNResult r = exact_error_probs(kH1, kH2, kH1, kH2, 0.0, 1);
  CHECK(r.eps1 == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(r.eps2 == doctest::Approx(0.2).epsilon(1e-14));

  // Threshold below the smallest per-symbol statistic: always decide 2.
  const double below = std::log(kH2[0] / kH1[0]) - 1.0;
  const FiniteNResult all2 = exact_error_probs(kH1, kH2, kH1, kH2, below, 1);
  CHECK(all2.eps1 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(all2.eps2 == 0.0);
}

TEST_CASE("type enumeration conserves probability mass") {
  // With an always-decide-2 threshold, eps1 sums every type: must be 1.
  const double below = std::log(kH2[0] / kH1[0]) - 1.0;
  for (const std::int64_t n : {5, 37, 200}) {
    const FiniteNResult r = exact_error_probs(kH1, kH2, kH1, kH2, below, n);
    CHECK(r.eps1 == doctest::Approx(1.0).epsilon(1e-12));
  }
  const Distribution t1({0.5, 0.3, 0.2});
  const Distribution t2({0.2, 0.3, 0.5});
  const FiniteNResult r3 = exact_error_probs(t1, t2, t1, t2, -100.0, 37);
  CHECK(r3.eps1 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exact_error_probs enforces the combinatorial budget") {
  const Distribution t1({0.5, 0.3, 0.2});
  CHECK_THROWS_AS(exact_error_probs(t1, t1, t1, Distribution({0.2, 0.3, 0.5}),
                                    0.0, 10000),
                  std::length_error);
}

TEST_CASE("finite-n slopes converge toward the exponent") {
  const MismatchedTest test(kH1, kH2, 0.0);
  const double e1 = mismatched_exponent_1(kH1, test).exponent;
  double prev_gap = 1e9;
  for (const std::int64_t n : {100, 200, 500}) {
    const FiniteNResult r = exact_error_probs(kH1, kH2, test, n);
    const double gap = std::abs(r.slope1 - e1);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap <= 0.02);
}

TEST_CASE("monte carlo is reproducible and respects degenerate tests") {
  SimulationConfig sim;
  sim.seed = 12345;
  sim.trials = 5000;
  sim.n = 50;
  const MonteCarloResult a = monte_carlo_errors(kH1, kH2, kH1, kH2, 0.0, sim);
  const MonteCarloResult b = monte_carlo_errors(kH1, kH2, kH1, kH2, 0.0, sim);
  CHECK(a.eps1_hat == b.eps1_hat);
  CHECK(a.eps2_hat == b.eps2_hat);

  // Constant statistic (equal test distributions) with a positive threshold:
  // the decide-2 region is never entered.
  const Distribution u({0.5, 0.5});
  const MonteCarloResult degenerate =
      monte_carlo_errors(kH1, kH1, u, u, 0.5, sim);
  CHECK(degenerate.eps1_hat == 0.0);
  CHECK(degenerate.eps2_hat == 1.0);
}

TEST_CASE("monte carlo agrees with exact enumeration at small n") {
  const MismatchedTest test(kH1, kH2, 0.0);
  const FiniteNResult exact = exact_error_probs(kH1, kH2, test, 50);
  SimulationConfig sim;
  sim.seed = 777;
  sim.trials = 20000;
  sim.n = 50;
  const MonteCarloResult mc = monte_carlo_errors(kH1, kH2, test, sim);
  CHECK(std::abs(mc.eps1_hat - exact.eps1) <= 3.0 * std::max(mc.se1, 1e-4));
  CHECK(std::abs(mc.eps2_hat - exact.eps2) <= 3.0 * std::max(mc.se2, 1e-4));
}

TEST_CASE("monte carlo at the corrected threshold hits the target error rate") {
  const double thresh = stein_threshold(kH1, kH1, kH2, 0.1, 2000);
  SimulationConfig sim;
  sim.seed = 2024;
  sim.trials = 20000;
  sim.n = 2000;
  const MonteCarloResult mc = monte_carlo_errors(kH1, kH2, kH1, kH2, thresh, sim);
  CHECK(mc.eps1_hat >= 0.07);
  CHECK(mc.eps1_hat <= 0.13);
}
