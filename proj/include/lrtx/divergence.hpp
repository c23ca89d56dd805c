// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <span>

#include "lrtx/distribution.hpp"

namespace lrtx {

/// Relative entropy D(p || q) = sum_x p(x) log(p(x)/q(x)) in nats.
/// p may contain zeros (0 log 0 := 0); q must be strictly positive.
double kl(std::span<const double> p, std::span<const double> q);
double kl(const Distribution& p, const Distribution& q);

/// Log-likelihood-ratio gap D(p || phat1) - D(p || phat2)
///   = sum_x p(x) log(phat2(x)/phat1(x)).
/// Linear in p; equals -D(phat1||phat2) at p = phat1 and +D(phat2||phat1)
/// at p = phat2. This is the test statistic evaluated at a type.
double llr_gap(std::span<const double> p, const Distribution& phat1,
               const Distribution& phat2);
double llr_gap(const Distribution& p, const Distribution& phat1,
               const Distribution& phat2);

/// Generalized tilt Q(x) proportional to base(x) * (phat2(x)/phat1(x))^lambda.
/// Computed in the log domain with max-subtraction so large |lambda| cannot
/// overflow. tilt(base, ., ., 0) == base; with base = phat1 this is the
/// classic exponential-family geodesic between phat1 (lambda=0) and phat2
/// (lambda=1).
Distribution tilt(const Distribution& base, const Distribution& phat1,
                  const Distribution& phat2, double lambda);

/// Bhattacharyya distance -log sum_x sqrt(p(x) q(x)). Symmetric, zero iff
/// p == q.
double bhattacharyya(const Distribution& p, const Distribution& q);

/// Chi-squared divergence sum_x q(x)^2 / p(x) - 1 == Var_p(q(X)/p(X)).
double chi_squared(const Distribution& q, const Distribution& p);
double chi_squared(std::span<const double> q, const Distribution& p);

}  // namespace lrtx
