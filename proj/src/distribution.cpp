// Apache License, Version 2.0, refer to LICENSE.txt
#include "lrtx/distribution.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lrtx {

namespace {
constexpr double kSumTol = 1e-12;
}

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.size() < 2) {
    throw std::invalid_argument("Distribution: alphabet size must be >= 2, got " +
                                std::to_string(probs_.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    const double p = probs_[i];
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw std::domain_error("Distribution: entry " + std::to_string(i) +
                              " = " + std::to_string(p) +
                              " is not strictly positive");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTol) {
    throw std::invalid_argument("Distribution: entries sum to " +
                                std::to_string(sum) + ", expected 1");
  }
}

Distribution Distribution::bernoulli(double p) {
  return Distribution({1.0 - p, p});
}

EmpiricalType::EmpiricalType(std::vector<std::int64_t> c, std::int64_t len)
    : counts(std::move(c)), n(len) {
  if (n < 1) {
    throw std::invalid_argument("EmpiricalType: n must be >= 1");
  }
  std::int64_t total = 0;
  for (auto ci : counts) {
    if (ci < 0) {
      throw std::invalid_argument("EmpiricalType: negative count");
    }
    total += ci;
  }
  if (total != n) {
    throw std::invalid_argument("EmpiricalType: counts sum to " +
                                std::to_string(total) + ", expected n = " +
                                std::to_string(n));
  }
}

std::vector<double> EmpiricalType::as_distribution() const {
  std::vector<double> out(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
  }
  return out;
}

void ToleranceConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_iter < 1) {
    throw std::invalid_argument(
        "ToleranceConfig: abs_tol and rel_tol must be positive, max_iter >= 1");
  }
}

}  // namespace lrtx
