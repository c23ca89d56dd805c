// Apache License, Version 2.0, refer to LICENSE.txt
#include "lrtx/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "lrtx/errors.hpp"

// Everything in here recomputes divergences and statistics locally so the
// oracle stays an independent route from the solver code it certifies.

namespace lrtx::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct LogSumExp {
  double peak = -kInf;
  double sum = 0.0;
  double comp = 0.0;  // Kahan compensation for the scaled sum

  void add(double log_term) {
    if (log_term == -kInf) return;
    if (log_term > peak) {
      const double rescale = std::exp(peak - log_term);
      sum *= rescale;
      comp *= rescale;
      peak = log_term;
    }
    const double term = std::exp(log_term - peak);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }

  double log_value() const {
    if (peak == -kInf) return -kInf;
    return peak + std::log(sum);
  }
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

void GridSpec::validate(std::size_t alphabet_size) const {
  if (points_per_dim < 2) {
    throw std::invalid_argument("GridSpec: points_per_dim must be >= 2");
  }
  if (!(floor > 0.0) || floor > 1.0 / static_cast<double>(alphabet_size)) {
    throw std::invalid_argument("GridSpec: floor must lie in (0, 1/alphabet_size]");
  }
}

void SimulationConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("SimulationConfig: trials must be >= 1");
  if (n < 1) throw std::invalid_argument("SimulationConfig: n must be >= 1");
}

namespace {

// ---- half-space grid minimization --------------------------------------

struct BinaryScanResult {
  bool found = false;
  double value = kInf;
  double t = 0.0;
};

// One exhaustive pass over t in [t_lo, t_hi]; q = [1-t, t].
BinaryScanResult binary_halfspace_pass(std::span<const double> p,
                                       std::span<const double> c, double gamma,
                                       bool geq, double t_lo, double t_hi,
                                       std::int64_t points) {
  BinaryScanResult best;
  const double step = (t_hi - t_lo) / static_cast<double>(points - 1);
  const double log_p0 = std::log(p[0]);
  const double log_p1 = std::log(p[1]);
  for (std::int64_t i = 0; i < points; ++i) {
    const double t = t_lo + step * static_cast<double>(i);
    const double stat = (1.0 - t) * c[0] + t * c[1];
    if (geq ? stat < gamma : stat > gamma) continue;
    const double val = (1.0 - t) * (std::log(1.0 - t) - log_p0) +
                       t * (std::log(t) - log_p1);
    if (val < best.value) {
      best.found = true;
      best.value = val;
      best.t = t;
    }
  }
  return best;
}

constexpr int kZoomPasses = 2;

// Base pass plus zoom refinement around the incumbent, so quantization error
// drops well below one base-grid spacing.
BinaryScanResult binary_halfspace_refined(std::span<const double> p,
                                          std::span<const double> c,
                                          double gamma, bool geq,
                                          const GridSpec& grid) {
  const double t_lo = grid.floor, t_hi = 1.0 - grid.floor;
  const std::int64_t points = grid.points_per_dim;
  BinaryScanResult best =
      binary_halfspace_pass(p, c, gamma, geq, t_lo, t_hi, points);
  if (!best.found) return best;
  double step = (t_hi - t_lo) / static_cast<double>(points - 1);
  for (int pass = 0; pass < kZoomPasses; ++pass) {
    const double w_lo = std::max(grid.floor, best.t - 2.0 * step);
    const double w_hi = std::min(1.0 - grid.floor, best.t + 2.0 * step);
    const BinaryScanResult zoom =
        binary_halfspace_pass(p, c, gamma, geq, w_lo, w_hi, points);
    if (zoom.found && zoom.value < best.value) best = zoom;
    step = (w_hi - w_lo) / static_cast<double>(points - 1);
  }
  return best;
}

struct TernaryScanResult {
  bool found = false;
  double value = kInf;
  double q0 = 0.0, q1 = 0.0;
};

TernaryScanResult ternary_halfspace_pass(std::span<const double> p,
                                         std::span<const double> c,
                                         double gamma, bool geq, double a0_lo,
                                         double a0_hi, double a1_lo,
                                         double a1_hi, double floor,
                                         std::int64_t points) {
  TernaryScanResult best;
  const double step0 = (a0_hi - a0_lo) / static_cast<double>(points - 1);
  const double step1 = (a1_hi - a1_lo) / static_cast<double>(points - 1);
  const double log_p0 = std::log(p[0]);
  const double log_p1 = std::log(p[1]);
  const double log_p2 = std::log(p[2]);
  for (std::int64_t i = 0; i < points; ++i) {
    const double q0 = a0_lo + step0 * static_cast<double>(i);
    for (std::int64_t j = 0; j < points; ++j) {
      const double q1 = a1_lo + step1 * static_cast<double>(j);
      const double q2 = 1.0 - q0 - q1;
      if (q2 < floor) continue;
      const double stat = q0 * c[0] + q1 * c[1] + q2 * c[2];
      if (geq ? stat < gamma : stat > gamma) continue;
      const double val = q0 * (std::log(q0) - log_p0) +
                         q1 * (std::log(q1) - log_p1) +
                         q2 * (std::log(q2) - log_p2);
      if (val < best.value) {
        best.found = true;
        best.value = val;
        best.q0 = q0;
        best.q1 = q1;
      }
    }
  }
  return best;
}

}  // namespace

GridMin grid_min_kl_halfspace(const Distribution& p, const MismatchedTest& test,
                              HalfspaceSide side, const GridSpec& grid) {
  const std::size_t k = p.alphabet_size();
  if (k != test.phat1.alphabet_size()) {
    throw std::invalid_argument("grid_min_kl_halfspace: alphabet sizes differ");
  }
  if (k > 3) {
    throw std::invalid_argument(
        "grid_min_kl_halfspace: alphabet sizes above 3 are not supported "
        "(grid blow-up)");
  }
  grid.validate(k);
  std::vector<double> c(k);
  for (std::size_t i = 0; i < k; ++i) {
    c[i] = std::log(test.phat2[i] / test.phat1[i]);
  }
  const bool geq = side == HalfspaceSide::geq;
  const double gamma = test.gamma_hat;
  const std::int64_t points = grid.points_per_dim;

  if (k == 2) {
    const BinaryScanResult best =
        binary_halfspace_refined(p.span(), c, gamma, geq, grid);
    if (!best.found) {
      throw InfeasibleError("grid_min_kl_halfspace: no feasible grid point");
    }
    return {best.value, {1.0 - best.t, best.t}};
  }

  // k == 3: grid over the first two coordinates.
  const double lo = grid.floor, hi = 1.0 - 2.0 * grid.floor;
  TernaryScanResult best = ternary_halfspace_pass(p.span(), c, gamma, geq, lo,
                                                  hi, lo, hi, grid.floor, points);
  if (!best.found) {
    throw InfeasibleError("grid_min_kl_halfspace: no feasible grid point");
  }
  double step = (hi - lo) / static_cast<double>(points - 1);
  for (int pass = 0; pass < kZoomPasses; ++pass) {
    const double a0_lo = std::max(lo, best.q0 - 2.0 * step);
    const double a0_hi = std::min(hi, best.q0 + 2.0 * step);
    const double a1_lo = std::max(lo, best.q1 - 2.0 * step);
    const double a1_hi = std::min(hi, best.q1 + 2.0 * step);
    const TernaryScanResult zoom = ternary_halfspace_pass(
        p.span(), c, gamma, geq, a0_lo, a0_hi, a1_lo, a1_hi, grid.floor, points);
    if (zoom.found && zoom.value < best.value) best = zoom;
    step = (a0_hi - a0_lo) / static_cast<double>(points - 1);
  }
  return {best.value, {best.q0, best.q1, 1.0 - best.q0 - best.q1}};
}

namespace {

struct PairScanResult {
  bool found = false;
  double value = kInf;
  double t_p = 0.0, t_q = 0.0;
};

// Joint pass over p = [1-tp, tp] with D(center||p) <= r and q = [1-tq, tq]
// in the half-space.
PairScanResult binary_pair_pass(std::span<const double> center,
                                std::span<const double> c, double gamma,
                                bool geq, double r, double p_lo, double p_hi,
                                double q_lo, double q_hi, std::int64_t points) {
  const double pstep = (p_hi - p_lo) / static_cast<double>(points - 1);
  const double qstep = (q_hi - q_lo) / static_cast<double>(points - 1);

  std::vector<double> plog0, plog1;
  std::vector<double> pt;
  plog0.reserve(points);
  plog1.reserve(points);
  pt.reserve(points);
  for (std::int64_t i = 0; i < points; ++i) {
    const double t = p_lo + pstep * static_cast<double>(i);
    const double div = center[0] * std::log(center[0] / (1.0 - t)) +
                       center[1] * std::log(center[1] / t);
    if (div > r) continue;
    plog0.push_back(std::log(1.0 - t));
    plog1.push_back(std::log(t));
    pt.push_back(t);
  }

  PairScanResult best;
  if (pt.empty()) return best;

  for (std::int64_t j = 0; j < points; ++j) {
    const double tq = q_lo + qstep * static_cast<double>(j);
    const double stat = (1.0 - tq) * c[0] + tq * c[1];
    if (geq ? stat < gamma : stat > gamma) continue;
    const double q0 = 1.0 - tq;
    const double entropy_term = q0 * std::log(q0) + tq * std::log(tq);
    for (std::size_t i = 0; i < pt.size(); ++i) {
      const double val = entropy_term - q0 * plog0[i] - tq * plog1[i];
      if (val < best.value) {
        best.found = true;
        best.value = val;
        best.t_p = pt[i];
        best.t_q = tq;
      }
    }
  }
  return best;
}

}  // namespace

GridWorstCase grid_worst_case(const Distribution& phat1,
                              const Distribution& phat2, double gamma_hat,
                              double r, int hypothesis, const GridSpec& grid) {
  if (phat1.alphabet_size() != 2 || phat2.alphabet_size() != 2) {
    throw std::invalid_argument("grid_worst_case: binary alphabets only");
  }
  if (hypothesis != 1 && hypothesis != 2) {
    throw std::invalid_argument("grid_worst_case: hypothesis must be 1 or 2");
  }
  if (!(r >= 0.0)) {
    throw std::invalid_argument("grid_worst_case: radius must be >= 0");
  }
  grid.validate(2);
  const Distribution& center = hypothesis == 1 ? phat1 : phat2;
  const std::vector<double> c = {std::log(phat2[0] / phat1[0]),
                                 std::log(phat2[1] / phat1[1])};
  const bool geq = hypothesis == 1;
  const std::int64_t points = grid.points_per_dim;
  const double lo = grid.floor, hi = 1.0 - grid.floor;

  // The singleton ball pins p at the center, which the p-grid would miss;
  // that case is a plain 1-D half-space scan.
  if (r == 0.0) {
    const BinaryScanResult only_q =
        binary_halfspace_refined(center.span(), c, gamma_hat, geq, grid);
    if (!only_q.found) {
      throw InfeasibleError("grid_worst_case: no feasible grid pair");
    }
    return {only_q.value,
            {center[0], center[1]},
            {1.0 - only_q.t, only_q.t}};
  }

  PairScanResult best = binary_pair_pass(center.span(), c, gamma_hat, geq, r,
                                         lo, hi, lo, hi, points);
  if (!best.found) {
    throw InfeasibleError("grid_worst_case: no feasible grid pair");
  }
  double pstep = (hi - lo) / static_cast<double>(points - 1);
  double qstep = pstep;
  for (int pass = 0; pass < kZoomPasses; ++pass) {
    const double p_lo = std::max(lo, best.t_p - 2.0 * pstep);
    const double p_hi = std::min(hi, best.t_p + 2.0 * pstep);
    const double q_lo = std::max(lo, best.t_q - 2.0 * qstep);
    const double q_hi = std::min(hi, best.t_q + 2.0 * qstep);
    const PairScanResult zoom = binary_pair_pass(center.span(), c, gamma_hat,
                                                 geq, r, p_lo, p_hi, q_lo, q_hi,
                                                 points);
    if (zoom.found && zoom.value < best.value) best = zoom;
    pstep = (p_hi - p_lo) / static_cast<double>(points - 1);
    qstep = (q_hi - q_lo) / static_cast<double>(points - 1);
  }
  return {best.value,
          {1.0 - best.t_p, best.t_p},
          {1.0 - best.t_q, best.t_q}};
}

FiniteNResult exact_error_probs(const Distribution& p1, const Distribution& p2,
                                const Distribution& phat1,
                                const Distribution& phat2, double gamma_hat,
                                std::int64_t n) {
  const std::size_t k = p1.alphabet_size();
  if (k != p2.alphabet_size() || k != phat1.alphabet_size() ||
      k != phat2.alphabet_size()) {
    throw std::invalid_argument("exact_error_probs: alphabet sizes differ");
  }
  if (n < 1) throw std::invalid_argument("exact_error_probs: n must be >= 1");

  // Composition count C(n + k - 1, k - 1), guarded against the budget.
  double compositions = 1.0;
  for (std::size_t j = 1; j < k; ++j) {
    compositions *= static_cast<double>(n + static_cast<std::int64_t>(j)) /
                    static_cast<double>(j);
  }
  if (compositions > 1e7) {
    throw std::length_error("exact_error_probs: composition count " +
                            std::to_string(compositions) +
                            " exceeds the 1e7 budget");
  }

  // Exact-as-possible log factorials: accumulated in long double.
  std::vector<double> log_fact(static_cast<std::size_t>(n) + 1, 0.0);
  long double acc = 0.0L;
  for (std::int64_t m = 1; m <= n; ++m) {
    acc += std::log(static_cast<long double>(m));
    log_fact[static_cast<std::size_t>(m)] = static_cast<double>(acc);
  }

  std::vector<double> log_p1(k), log_p2(k), sym_stat(k);
  for (std::size_t i = 0; i < k; ++i) {
    log_p1[i] = std::log(p1[i]);
    log_p2[i] = std::log(p2[i]);
    sym_stat[i] = std::log(phat2[i] / phat1[i]);
  }

  LogSumExp err1, err2;
  std::vector<std::int64_t> counts(k, 0);

  // Odometer over compositions of n into k parts.
  const auto visit = [&](const std::vector<std::int64_t>& cnt) {
    double log_coeff = log_fact[static_cast<std::size_t>(n)];
    double stat_sum = 0.0;
    double log_mass1 = 0.0, log_mass2 = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const auto ci = static_cast<std::size_t>(cnt[i]);
      log_coeff -= log_fact[ci];
      const double cd = static_cast<double>(cnt[i]);
      stat_sum += cd * sym_stat[i];
      log_mass1 += cd * log_p1[i];
      log_mass2 += cd * log_p2[i];
    }
    // Deterministic rule: statistic >= threshold decides hypothesis 2.
    const bool decide2 = stat_sum >= gamma_hat * static_cast<double>(n);
    if (decide2) {
      err1.add(log_coeff + log_mass1);
    } else {
      err2.add(log_coeff + log_mass2);
    }
  };

  // Recursive enumeration, the last coordinate absorbs the remainder.
  const std::function<void(std::size_t, std::int64_t)> rec =
      [&](std::size_t idx, std::int64_t remaining) {
        if (idx == k - 1) {
          counts[idx] = remaining;
          visit(counts);
          return;
        }
        for (std::int64_t v = 0; v <= remaining; ++v) {
          counts[idx] = v;
          rec(idx + 1, remaining - v);
        }
      };
  rec(0, n);

  const double log_e1 = err1.log_value();
  const double log_e2 = err2.log_value();
  const double eps1 = std::min(std::exp(log_e1), 1.0);
  const double eps2 = std::min(std::exp(log_e2), 1.0);
  const double nd = static_cast<double>(n);
  return {eps1, eps2, n, -log_e1 / nd, -log_e2 / nd};
}

FiniteNResult exact_error_probs(const Distribution& p1, const Distribution& p2,
                                const MismatchedTest& test, std::int64_t n) {
  return exact_error_probs(p1, p2, test.phat1, test.phat2, test.gamma_hat, n);
}

namespace {

constexpr std::int64_t kChunkTrials = 4096;

// Counts decision errors in one chunk with its own generator, so the result
// does not depend on how chunks are distributed over workers.
std::int64_t run_chunk(const Distribution& gen, std::span<const double> sym_stat,
                       double stat_threshold, bool error_when_geq,
                       std::int64_t n, std::int64_t trials,
                       std::uint64_t chunk_seed) {
  std::mt19937_64 eng(chunk_seed);
  std::vector<double> cum(gen.alphabet_size());
  double c = 0.0;
  for (std::size_t i = 0; i < gen.alphabet_size(); ++i) {
    c += gen[i];
    cum[i] = c;
  }
  cum.back() = 1.0;

  std::int64_t errors = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    double stat = 0.0;
    for (std::int64_t j = 0; j < n; ++j) {
      const double u =
          static_cast<double>(eng() >> 11) * 0x1.0p-53;  // [0, 1)
      std::size_t sym = 0;
      while (u >= cum[sym]) ++sym;
      stat += sym_stat[sym];
    }
    const bool geq = stat >= stat_threshold;
    if (geq == error_when_geq) ++errors;
  }
  return errors;
}

}  // namespace

MonteCarloResult monte_carlo_errors(const Distribution& p1,
                                    const Distribution& p2,
                                    const Distribution& phat1,
                                    const Distribution& phat2,
                                    double gamma_hat,
                                    const SimulationConfig& sim) {
  sim.validate();
  const std::size_t k = p1.alphabet_size();
  if (k != p2.alphabet_size() || k != phat1.alphabet_size() ||
      k != phat2.alphabet_size()) {
    throw std::invalid_argument("monte_carlo_errors: alphabet sizes differ");
  }
  std::vector<double> sym_stat(k);
  for (std::size_t i = 0; i < k; ++i) {
    sym_stat[i] = std::log(phat2[i] / phat1[i]);
  }
  const double stat_threshold = gamma_hat * static_cast<double>(sim.n);

  const auto estimate = [&](const Distribution& gen, bool error_when_geq,
                            std::uint64_t stream_tag) {
    std::int64_t errors = 0;
    std::int64_t done = 0;
    std::uint64_t chunk_index = 0;
    while (done < sim.trials) {
      const std::int64_t batch = std::min(kChunkTrials, sim.trials - done);
      const std::uint64_t chunk_seed =
          splitmix64(splitmix64(sim.seed ^ (stream_tag * 0x9e3779b97f4a7c15ULL)) +
                     chunk_index);
      errors += run_chunk(gen, sym_stat, stat_threshold, error_when_geq, sim.n,
                          batch, chunk_seed);
      done += batch;
      ++chunk_index;
    }
    const double rate = static_cast<double>(errors) / static_cast<double>(sim.trials);
    const double se = std::sqrt(rate * (1.0 - rate) / static_cast<double>(sim.trials));
    return std::pair<double, double>{rate, se};
  };

  // Under hypothesis 1 a statistic above the threshold is an error; under
  // hypothesis 2 the complement is.
  const auto [e1, s1] = estimate(p1, true, 1);
  const auto [e2, s2] = estimate(p2, false, 2);
  return {e1, e2, s1, s2};
}

MonteCarloResult monte_carlo_errors(const Distribution& p1,
                                    const Distribution& p2,
                                    const MismatchedTest& test,
                                    const SimulationConfig& sim) {
  return monte_carlo_errors(p1, p2, test.phat1, test.phat2, test.gamma_hat, sim);
}

}  // namespace lrtx::oracle
