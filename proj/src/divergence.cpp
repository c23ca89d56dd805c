// Apache License, Version 2.0, refer to LICENSE.txt
#include "lrtx/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lrtx {

namespace {

void check_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": alphabet sizes differ (" +
                                std::to_string(a) + " vs " + std::to_string(b) +
                                ")");
  }
}

}  // namespace

double kl(std::span<const double> p, std::span<const double> q) {
  check_same_size(p.size(), q.size(), "kl");
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(q[i] > 0.0)) {
      throw std::domain_error("kl: q has a nonpositive entry at index " +
                              std::to_string(i));
    }
    if (p[i] < 0.0) {
      throw std::domain_error("kl: p has a negative entry at index " +
                              std::to_string(i));
    }
    if (p[i] > 0.0) {
      acc += p[i] * std::log(p[i] / q[i]);
    }
  }
  // Rounding can push the value a hair below zero when p == q.
  return acc;
}

double kl(const Distribution& p, const Distribution& q) {
  return kl(p.span(), q.span());
}

double llr_gap(std::span<const double> p, const Distribution& phat1,
               const Distribution& phat2) {
  check_same_size(p.size(), phat1.alphabet_size(), "llr_gap");
  check_same_size(p.size(), phat2.alphabet_size(), "llr_gap");
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i] * std::log(phat2[i] / phat1[i]);
  }
  return acc;
}

double llr_gap(const Distribution& p, const Distribution& phat1,
               const Distribution& phat2) {
  return llr_gap(p.span(), phat1, phat2);
}

Distribution tilt(const Distribution& base, const Distribution& phat1,
                  const Distribution& phat2, double lambda) {
  check_same_size(base.alphabet_size(), phat1.alphabet_size(), "tilt");
  check_same_size(base.alphabet_size(), phat2.alphabet_size(), "tilt");
  if (!std::isfinite(lambda)) {
    throw std::invalid_argument("tilt: lambda must be finite");
  }
  const std::size_t n = base.alphabet_size();
  std::vector<double> logw(n);
  for (std::size_t i = 0; i < n; ++i) {
    logw[i] = std::log(base[i]) + lambda * (std::log(phat2[i]) - std::log(phat1[i]));
  }
  const double m = *std::max_element(logw.begin(), logw.end());
  std::vector<double> w(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // Floor keeps the result strictly positive even when exp underflows at
    // extreme lambda.
    w[i] = std::max(std::exp(logw[i] - m), 1e-300);
    total += w[i];
  }
  for (auto& wi : w) wi /= total;
  return Distribution(std::move(w));
}

double bhattacharyya(const Distribution& p, const Distribution& q) {
  check_same_size(p.alphabet_size(), q.alphabet_size(), "bhattacharyya");
  double acc = 0.0;
  for (std::size_t i = 0; i < p.alphabet_size(); ++i) {
    acc += std::sqrt(p[i] * q[i]);
  }
  return -std::log(acc);
}

double chi_squared(std::span<const double> q, const Distribution& p) {
  check_same_size(q.size(), p.alphabet_size(), "chi_squared");
  double acc = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    acc += q[i] * q[i] / p[i];
  }
  return acc - 1.0;
}

double chi_squared(const Distribution& q, const Distribution& p) {
  return chi_squared(q.span(), p);
}

}  // namespace lrtx
