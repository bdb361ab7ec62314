#pragma once

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "orlicz/errors.hpp"

namespace orlicz {

/// log Γ(x) for x > 0. Boost's implementation is reentrant, unlike lgamma(3).
inline double log_gamma(double x) { return boost::math::lgamma(x); }

/// ∫₀^∞ r^k dμ_n(r) with dμ_n = r^{n-1} e^{-r²/2} dr, i.e. 2^{(n+k-2)/2} Γ((n+k)/2).
inline double moment(int n, double k) {
  if (n < 1 || !(k >= 0.0)) {
    throw PreconditionError("moment: need n >= 1 and k >= 0");
  }
  const double s = 0.5 * (n + k);
  return std::exp((s - 1.0) * std::numbers::ln2 + log_gamma(s));
}

/// Surface area of the unit sphere S^{n-1} (ω_1 = 2 counts both endpoints of [-1,1]).
inline double sphere_area(int n) {
  if (n < 1) throw PreconditionError("sphere_area: need n >= 1");
  const double h = 0.5 * n;
  return 2.0 * std::exp(h * std::log(std::numbers::pi) - log_gamma(h));
}

/// Regularised upper incomplete gamma Q(s, x).
inline double gamma_q(double s, double x) { return boost::math::gamma_q(s, x); }

}  // namespace orlicz
