// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lrtx {

/// A strictly positive probability vector on a finite alphabet.
///
/// Construction validates: alphabet size >= 2, every entry > 0, entries sum
/// to 1 within 1e-12. Inputs with zero mass are rejected rather than handled
/// through support conventions; closed-simplex points (types, grid cells) are
/// passed around as plain vectors instead.
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs);

  /// Two-symbol distribution [1-p, p].
  static Distribution bernoulli(double p);

  std::size_t alphabet_size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }
  std::span<const double> span() const { return probs_; }

  bool operator==(const Distribution& other) const = default;

 private:
  std::vector<double> probs_;
};

/// Histogram of an observed length-n sequence. Zero counts are allowed; the
/// normalized type lives in the closed simplex.
struct EmpiricalType {
  std::vector<std::int64_t> counts;
  std::int64_t n = 0;

  EmpiricalType(std::vector<std::int64_t> counts, std::int64_t n);

  /// counts / n as a closed-simplex point.
  std::vector<double> as_distribution() const;
};

/// Shared numeric tolerances for the 1-D and fixed-point solvers.
struct ToleranceConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_iter = 200;

  void validate() const;
};

}  // namespace lrtx
