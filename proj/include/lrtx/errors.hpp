// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lrtx {

/// Iterative solver failed to converge. Carries the last iterate and the
/// residual it stalled at so callers can diagnose or report.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::vector<double> last_iterate = {},
              double residual = 0.0)
      : std::runtime_error(what),
        last_iterate_(std::move(last_iterate)),
        residual_(residual) {}

  const std::vector<double>& last_iterate() const { return last_iterate_; }
  double residual() const { return residual_; }

 private:
  std::vector<double> last_iterate_;
  double residual_;
};

/// The requested problem has no solution (empty constraint set, threshold at
/// or beyond the attainable statistic range, unbounded multiplier).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lrtx
