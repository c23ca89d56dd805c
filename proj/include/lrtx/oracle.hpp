// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <vector>

#include "lrtx/distribution.hpp"
#include "lrtx/mismatch.hpp"

namespace lrtx::oracle {

/// Ground-truth machinery, deliberately independent of the solvers it
/// checks: exhaustive simplex grids, exact finite-n error probabilities by
/// type enumeration, and Monte Carlo simulation. Divergences and statistics
/// are recomputed locally rather than routed through the solver code paths.

struct GridSpec {
  std::int64_t points_per_dim = 2000;
  double floor = 1e-9;  // minimum probability per grid cell

  void validate(std::size_t alphabet_size) const;
};

enum class HalfspaceSide { geq, leq };

struct GridMin {
  double value = 0.0;
  std::vector<double> argmin;
};

/// Brute-force min of D(Q || p) over the grid points of the half-space
/// {llr_gap(Q) >= or <= gamma_hat}. Alphabet sizes 2 and 3 only. The base
/// grid is refined by two zoom passes around the incumbent so the result is
/// accurate well below one base-grid spacing. Throws InfeasibleError when no
/// grid point is feasible.
GridMin grid_min_kl_halfspace(const Distribution& p, const MismatchedTest& test,
                              HalfspaceSide side, const GridSpec& grid);

struct GridWorstCase {
  double value = 0.0;
  std::vector<double> p_arg;
  std::vector<double> q_arg;
};

/// 2-D exhaustive search over (P, Q) grid pairs with D(center||P) <= r and Q
/// in the half-space, binary alphabets only (the product grid is 4e6 pairs at
/// the default density). Zoom-refined like the half-space oracle.
GridWorstCase grid_worst_case(const Distribution& phat1,
                              const Distribution& phat2, double gamma_hat,
                              double r, int hypothesis, const GridSpec& grid);

struct FiniteNResult {
  double eps1 = 0.0;
  double eps2 = 0.0;
  std::int64_t n = 0;
  double slope1 = 0.0;  // -ln(eps1)/n
  double slope2 = 0.0;
};

/// Exact error probabilities of the test at blocklength n by summation over
/// all types (log-domain, compensated). The decision rule is deterministic:
/// statistic >= gamma_hat decides hypothesis 2, so eps1 sums that region
/// under p1 and eps2 the strict complement under p2. Throws
/// std::length_error when the composition count exceeds 1e7.
FiniteNResult exact_error_probs(const Distribution& p1, const Distribution& p2,
                                const Distribution& phat1,
                                const Distribution& phat2, double gamma_hat,
                                std::int64_t n);
FiniteNResult exact_error_probs(const Distribution& p1, const Distribution& p2,
                                const MismatchedTest& test, std::int64_t n);

struct SimulationConfig {
  std::uint64_t seed = 1;
  std::int64_t trials = 10000;
  std::int64_t n = 100;

  void validate() const;
};

struct MonteCarloResult {
  double eps1_hat = 0.0;
  double eps2_hat = 0.0;
  double se1 = 0.0;  // binomial standard errors
  double se2 = 0.0;
};

/// Unbiased Monte Carlo estimates of both error probabilities. Trials are
/// processed in fixed-size chunks with per-chunk generators derived from the
/// seed, so the result is bit-identical regardless of how chunks are
/// scheduled.
MonteCarloResult monte_carlo_errors(const Distribution& p1,
                                    const Distribution& p2,
                                    const Distribution& phat1,
                                    const Distribution& phat2,
                                    double gamma_hat,
                                    const SimulationConfig& sim);
MonteCarloResult monte_carlo_errors(const Distribution& p1,
                                    const Distribution& p2,
                                    const MismatchedTest& test,
                                    const SimulationConfig& sim);

}  // namespace lrtx::oracle
