// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <random>
#include <vector>

#include "lrtx/distribution.hpp"
#include "lrtx/lrt.hpp"

namespace lrtx_test {

/// Random strictly positive distribution with entries bounded away from the
/// simplex boundary.
inline lrtx::Distribution random_distribution(std::mt19937_64& rng,
                                              std::size_t k,
                                              double min_mass = 0.05) {
  std::uniform_real_distribution<double> unif(min_mass, 1.0);
  std::vector<double> v(k);
  double total = 0.0;
  for (auto& x : v) {
    x = unif(rng);
    total += x;
  }
  for (auto& x : v) x /= total;
  return lrtx::Distribution(std::move(v));
}

/// Uniform threshold strictly inside the matched range of (p1, p2).
inline double random_gamma_in_range(std::mt19937_64& rng,
                                    const lrtx::Distribution& p1,
                                    const lrtx::Distribution& p2) {
  const lrtx::ThresholdRange range = lrtx::threshold_range(p1, p2);
  std::uniform_real_distribution<double> unif(0.02, 0.98);
  const double frac = unif(rng);
  return range.lo + frac * (range.hi - range.lo);
}

}  // namespace lrtx_test
