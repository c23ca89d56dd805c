// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

namespace lrtx {

/// Quantile function of the standard normal distribution.
/// Rational approximation (Acklam) polished with one Halley step against
/// erfc; absolute error well below 1e-9 across (0, 1).
double inverse_normal_cdf(double p);

}  // namespace lrtx
