// Apache License, Version 2.0, refer to LICENSE.txt
#include "lrtx/worst_case.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "internal/solvers.hpp"
#include "lrtx/divergence.hpp"
#include "lrtx/errors.hpp"

namespace lrtx {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kProbFloor = 1e-12;
constexpr double kRadiusCap = 50.0;  // critical_radius search ceiling, nats
}  // namespace

KlBall::KlBall(Distribution c, double r) : center(std::move(c)), radius(r) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("KlBall: radius must be finite and >= 0");
  }
}

bool KlBall::contains(std::span<const double> p) const {
  return kl(center.span(), p) <= radius;
}

const char* to_string(WcStatus status) {
  switch (status) {
    case WcStatus::interior: return "interior";
    case WcStatus::zero_exponent: return "zero_exponent";
    case WcStatus::center_degenerate: return "center_degenerate";
  }
  return "unknown";
}

namespace {

// Extremizes sum_x P(x) d(x) over {P : D(center||P) <= R}. The stationary
// family is P(x) = center(x) / (s + d_max - d(x)) normalized, s > 0; the
// radius constraint pins s by 1-D root finding in log space.
struct LinearBallSolve {
  std::vector<double> p;
  bool clamped = false;
};

LinearBallSolve extremize_over_ball(const Distribution& center,
                                    const std::vector<double>& d, double radius) {
  const std::size_t k = center.alphabet_size();
  const double d_max = *std::max_element(d.begin(), d.end());

  const auto point_at = [&](double s) {
    std::vector<double> p(k);
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      p[i] = center[i] / (s + (d_max - d[i]));
      total += p[i];
    }
    for (auto& pi : p) pi /= total;
    return p;
  };
  const auto radius_resid = [&](double s) {
    const std::vector<double> p = point_at(s);
    double div = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      div += center[i] * std::log(center[i] / p[i]);
    }
    return div - radius;
  };

  double s_hi = 1.0;
  int grow = 0;
  while (radius_resid(s_hi) > 0.0) {
    s_hi *= 2.0;
    if (++grow > 400) break;  // resid -> -R < 0, cannot really happen
  }
  double s_lo = s_hi;
  bool floored = false;
  while (radius_resid(s_lo) < 0.0) {
    s_lo *= 0.5;
    if (s_lo < 1e-250) {
      floored = true;  // ball presses into the simplex boundary numerically
      break;
    }
  }

  double s = s_lo;
  if (!floored) {
    // Geometric bisection; the radius constraint is strictly convex so the
    // root is unique.
    for (int it = 0; it < 400; ++it) {
      s = std::sqrt(s_lo * s_hi);
      const double resid = radius_resid(s);
      if (resid > 0.0) {
        s_lo = s;
      } else {
        s_hi = s;
      }
      if (s_hi / s_lo < 1.0 + 1e-14 || std::abs(resid) < 1e-13 * std::max(1.0, radius)) {
        break;
      }
    }
    s = std::sqrt(s_lo * s_hi);
  }

  LinearBallSolve out{point_at(s), false};
  double clamped_total = 0.0;
  for (auto& pi : out.p) {
    if (pi < kProbFloor) {
      pi = kProbFloor;
      out.clamped = true;
    }
    clamped_total += pi;
  }
  if (out.clamped || floored) {
    out.clamped = true;
    for (auto& pi : out.p) pi /= clamped_total;
  }
  return out;
}

}  // namespace

BallExtreme ball_llr_extreme(const Distribution& phat1,
                             const Distribution& phat2, const KlBall& ball,
                             ExtremeDirection direction,
                             const ToleranceConfig& tol) {
  tol.validate();
  if (phat1.alphabet_size() != phat2.alphabet_size() ||
      phat1.alphabet_size() != ball.center.alphabet_size()) {
    throw std::invalid_argument("ball_llr_extreme: alphabet sizes differ");
  }
  const std::size_t k = ball.center.alphabet_size();
  std::vector<double> c(k);
  for (std::size_t i = 0; i < k; ++i) {
    c[i] = std::log(phat2[i]) - std::log(phat1[i]);
  }
  const auto [c_min_it, c_max_it] = std::minmax_element(c.begin(), c.end());
  const bool constant = *c_max_it - *c_min_it < 1e-14;

  if (ball.radius == 0.0 || constant) {
    return {llr_gap(ball.center, phat1, phat2), ball.center, false};
  }

  std::vector<double> d = c;
  if (direction == ExtremeDirection::minimize) {
    for (auto& di : d) di = -di;
  }
  LinearBallSolve solve = extremize_over_ball(ball.center, d, ball.radius);
  Distribution arg(std::move(solve.p));
  const double value = llr_gap(arg, phat1, phat2);
  return {value, std::move(arg), solve.clamped};
}

namespace {

// Core of the worst-case solve, phrased for the half-space
// {Q : llr_gap(Q, anchor_a, anchor_b) >= target} with the ball centered at
// `center`. Hypothesis 1 uses (phat1, phat2, gamma); hypothesis 2 maps to
// anchors swapped with target -gamma, which flips the statistic's sign.
struct InnerState {
  std::vector<double> p;
  Distribution q;
  double lambda = 0.0;
  int iterations = 0;
};

InnerState inner_fixed_point(const Distribution& center,
                             const Distribution& anchor_a,
                             const Distribution& anchor_b, double target,
                             double beta, const ToleranceConfig& opts) {
  const std::size_t k = center.alphabet_size();
  std::vector<double> p = center.probs();
  double prev_change = kInf;
  const int inner_max = std::max(opts.max_iter * 10, 2000);

  for (int it = 0; it < inner_max; ++it) {
    Distribution p_dist(p);
    const detail::TiltFamily family(p_dist, anchor_a, anchor_b);
    const double lambda = detail::solve_gap_lambda(family, target, opts);
    Distribution q = tilt(p_dist, anchor_a, anchor_b, lambda);

    std::vector<double> p_next(k);
    double change = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      p_next[i] = beta * q[i] + (1.0 - beta) * center[i];
      change = std::max(change, std::abs(p_next[i] - p[i]));
    }
    if (change > prev_change) {
      // Oscillation: damp the update by half.
      change = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        p_next[i] = 0.5 * (p_next[i] + p[i]);
        change = std::max(change, std::abs(p_next[i] - p[i]));
      }
    }
    p = std::move(p_next);
    prev_change = change;
    if (change < 1e-11) {
      // Recompute the boundary tilt at the settled p so the reported triple
      // (p, q, lambda) is self-consistent.
      Distribution p_final(p);
      const detail::TiltFamily fam(p_final, anchor_a, anchor_b);
      const double lam = detail::solve_gap_lambda(fam, target, opts);
      Distribution q_final = tilt(p_final, anchor_a, anchor_b, lam);
      return {std::move(p), std::move(q_final), lam, it + 1};
    }
  }
  throw SolverError("worst_case: inner fixed point did not settle", p,
                    prev_change);
}

WorstCaseSolution solve_worst_case(const Distribution& center,
                                   const Distribution& anchor_a,
                                   const Distribution& anchor_b, double target,
                                   double radius, const ToleranceConfig& opts,
                                   const std::atomic<bool>* cancel) {
  const auto divergence_from_center = [&](const std::vector<double>& p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      acc += center[i] * std::log(center[i] / p[i]);
    }
    return acc;
  };

  const auto check_cancel = [&] {
    if (cancel != nullptr && cancel->load(std::memory_order_relaxed)) {
      throw SolverError("worst_case: cancelled");
    }
  };

  // beta = 0 pins p at the center; the radius constraint is then slack only
  // for R = 0, handled by the caller.
  double beta_lo = 0.0;
  double beta_hi = 1.0;
  check_cancel();
  InnerState at_hi = inner_fixed_point(center, anchor_a, anchor_b, target, beta_hi, opts);
  if (divergence_from_center(at_hi.p) < radius) {
    throw SolverError(
        "worst_case: radius not reachable along the optimal mixture path",
        at_hi.p, divergence_from_center(at_hi.p) - radius);
  }

  InnerState best = std::move(at_hi);
  double beta_best = beta_hi;
  const double resid_tol = std::max(1e-11, 1e-9 * radius);
  for (int it = 0; it < opts.max_iter; ++it) {
    check_cancel();
    const double beta = 0.5 * (beta_lo + beta_hi);
    InnerState state = inner_fixed_point(center, anchor_a, anchor_b, target, beta, opts);
    const double resid = divergence_from_center(state.p) - radius;
    best = std::move(state);
    beta_best = beta;
    if (resid < 0.0) {
      beta_lo = beta;
    } else {
      beta_hi = beta;
    }
    if (std::abs(resid) <= resid_tol || beta_hi - beta_lo <= 1e-13) {
      break;
    }
  }

  Distribution p_least(best.p);
  const double exponent = kl(best.q, p_least);
  return {exponent, std::move(p_least), std::move(best.q), best.lambda,
          beta_best, WcStatus::interior};
}

WorstCaseSolution worst_case_impl(const Distribution& phat1,
                                  const Distribution& phat2, double gamma_hat,
                                  double radius, int hypothesis,
                                  const ToleranceConfig& opts,
                                  const std::atomic<bool>* cancel) {
  opts.validate();
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("worst_case_exponent: radius must be >= 0");
  }
  if (phat1.alphabet_size() != phat2.alphabet_size()) {
    throw std::invalid_argument("worst_case_exponent: alphabet sizes differ");
  }

  const Distribution& center = hypothesis == 1 ? phat1 : phat2;

  // Degenerate test: the statistic is identically zero, so one region is the
  // whole simplex and the other is empty depending on the threshold sign.
  {
    bool constant = true;
    for (std::size_t i = 0; i < phat1.alphabet_size() && constant; ++i) {
      constant = std::abs(std::log(phat2[i] / phat1[i])) < 1e-14;
    }
    if (constant) {
      const bool region_nonempty =
          hypothesis == 1 ? gamma_hat <= 0.0 : gamma_hat >= 0.0;
      return {region_nonempty ? 0.0 : kInf, center, center, 0.0, 0.0,
              WcStatus::center_degenerate};
    }
  }

  const KlBall ball(center, radius);
  const BallExtreme extreme =
      ball_llr_extreme(phat1, phat2, ball,
                       hypothesis == 1 ? ExtremeDirection::maximize
                                       : ExtremeDirection::minimize,
                       opts);
  const bool crosses = hypothesis == 1 ? extreme.value > gamma_hat
                                       : extreme.value < gamma_hat;
  if (crosses) {
    // Some generating distribution in the ball already sits inside the error
    // region; it is its own feasible witness and the exponent collapses.
    return {0.0, extreme.arg, extreme.arg, 0.0, 1.0, WcStatus::zero_exponent};
  }

  const Distribution& anchor_a = hypothesis == 1 ? phat1 : phat2;
  const Distribution& anchor_b = hypothesis == 1 ? phat2 : phat1;
  const double target = hypothesis == 1 ? gamma_hat : -gamma_hat;

  if (radius == 0.0) {
    const detail::TiltFamily family(center, anchor_a, anchor_b);
    const double lambda = detail::solve_gap_lambda(family, target, opts);
    Distribution q = tilt(center, anchor_a, anchor_b, lambda);
    const double exponent = kl(q, center);
    return {exponent, center, std::move(q), lambda, 0.0, WcStatus::interior};
  }

  return solve_worst_case(center, anchor_a, anchor_b, target, radius, opts,
                          cancel);
}

}  // namespace

WorstCaseSolution worst_case_exponent_1(const Distribution& phat1,
                                        const Distribution& phat2,
                                        double gamma_hat, double r1,
                                        const ToleranceConfig& opts,
                                        const std::atomic<bool>* cancel) {
  return worst_case_impl(phat1, phat2, gamma_hat, r1, 1, opts, cancel);
}

WorstCaseSolution worst_case_exponent_2(const Distribution& phat1,
                                        const Distribution& phat2,
                                        double gamma_hat, double r2,
                                        const ToleranceConfig& opts,
                                        const std::atomic<bool>* cancel) {
  return worst_case_impl(phat1, phat2, gamma_hat, r2, 2, opts, cancel);
}

double critical_radius(const Distribution& phat1, const Distribution& phat2,
                       double gamma_hat, int hypothesis,
                       const ToleranceConfig& tol) {
  tol.validate();
  if (hypothesis != 1 && hypothesis != 2) {
    throw std::invalid_argument("critical_radius: hypothesis must be 1 or 2");
  }
  const Distribution& center = hypothesis == 1 ? phat1 : phat2;
  const auto crossing_margin = [&](double r) {
    const BallExtreme x =
        ball_llr_extreme(phat1, phat2, KlBall(center, r),
                         hypothesis == 1 ? ExtremeDirection::maximize
                                         : ExtremeDirection::minimize,
                         tol);
    return hypothesis == 1 ? x.value - gamma_hat : gamma_hat - x.value;
  };

  if (crossing_margin(0.0) >= 0.0) {
    return 0.0;
  }
  if (crossing_margin(kRadiusCap) < 0.0) {
    return kInf;
  }
  double lo = 0.0, hi = kRadiusCap;
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    if (crossing_margin(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace lrtx
