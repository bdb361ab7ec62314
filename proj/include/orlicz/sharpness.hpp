#pragma once

// Sharpness of the power-case constants, witnessed by the Gaussian family
// u_α(r) = exp(α r² / (2p)) whose modulars have closed Γ-forms.

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/functionals.hpp"
#include "orlicz/hash.hpp"
#include "orlicz/special.hpp"

namespace orlicz {

struct ExtremalParams {
  double alpha = 0.0;
  double p = 2.0;
  int n = 1;

  void validate() const {
    if (!(alpha >= 0.0)) throw PreconditionError("extremal: alpha must be >= 0");
    if (!(alpha < 1.0)) throw PreconditionError("extremal: alpha must be < 1 (modulars diverge)");
    if (!(p >= 2.0)) throw PreconditionError("extremal: p must be >= 2");
    if (n < 1) throw PreconditionError("extremal: n must be >= 1");
  }
};

inline RadialTestFunction extremal_function(const ExtremalParams& prm) {
  prm.validate();
  const double c = prm.alpha / (2.0 * prm.p);
  const double slope = prm.alpha / prm.p;
  RadialTestFunction f;
  f.label = "u_alpha(alpha=" + format_double(prm.alpha) + ",p=" + format_double(prm.p) + ")";
  f.u = [c](double r) { return std::exp(c * r * r); };
  f.du = [c, slope](double r) { return slope * r * std::exp(c * r * r); };
  f.log_abs_u = [c](double r) { return c * r * r; };
  f.log_abs_du = [c, slope](double r) {
    if (slope == 0.0 || r <= 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(slope * r) + c * r * r;
  };
  f.support = SupportHint::decaying(0.0, -slope);
  f.hypothesis_class = "smooth, Gaussian growth exp(alpha r^2/(2p))";
  return f;
}

/// Closed forms for M(r) = r^p:
///   K = (1-α)^{-(n+p)/2} 2^{(n+p-2)/2} Γ((n+p)/2)
///   L = (1-α)^{-n/2}     2^{(n-2)/2}   Γ(n/2)
///   G = (α/p)^p K
inline ModularTriple extremal_moments(const ExtremalParams& prm) {
  prm.validate();
  const double a = prm.alpha, p = prm.p, n = prm.n;
  const double logK = -0.5 * (n + p) * std::log1p(-a) + 0.5 * (n + p - 2.0) * std::numbers::ln2 +
                      log_gamma(0.5 * (n + p));
  const double logL = -0.5 * n * std::log1p(-a) + 0.5 * (n - 2.0) * std::numbers::ln2 +
                      log_gamma(0.5 * n);
  ModularTriple t;
  t.K = std::exp(logK);
  t.L = std::exp(logL);
  t.G = a == 0.0 ? 0.0 : std::exp(p * std::log(a / p) + logK);
  return t;
}

/// 2^{p/2} Γ((n+p)/2) / Γ(n/2).
inline double c1_lower_bound(double p, int n) {
  if (!(p >= 2.0) || n < 1) throw PreconditionError("c1_lower_bound: need p >= 2, n >= 1");
  return std::exp(0.5 * p * std::numbers::ln2 + log_gamma(0.5 * (n + p)) - log_gamma(0.5 * n));
}

struct InfeasibilityPoint {
  double alpha;
  double c1_required;
};

/// With C2 = p^p, the smallest admissible C1 on u_α is
/// c1_lower_bound(p, n) (1 - α^p) / (1 - α)^{p/2}.
inline std::vector<InfeasibilityPoint> c2_infeasibility_scan(double p, int n,
                                                             const std::vector<double>& alphas) {
  if (!(p > 2.0)) throw PreconditionError("c2_infeasibility_scan: p must be > 2");
  const double base = c1_lower_bound(p, n);
  std::vector<InfeasibilityPoint> out;
  double prev = -1.0;
  for (double a : alphas) {
    if (!(a >= 0.0 && a < 1.0) || a <= prev) {
      throw PreconditionError("c2_infeasibility_scan: alphas must increase within [0,1)");
    }
    prev = a;
    out.push_back({a, base * (1.0 - std::pow(a, p)) / std::pow(1.0 - a, 0.5 * p)});
  }
  return out;
}

/// 2^{p/2} Γ((n+p)/2) / ((n+p-2)^{p/2} Γ(n/2)); tends to 1 as n -> ∞.
inline double stirling_ratio(double p, double n) {
  if (!(p > 2.0) || !(n >= 1.0)) throw PreconditionError("stirling_ratio: need p > 2, n >= 1");
  return std::exp(0.5 * p * std::numbers::ln2 + log_gamma(0.5 * (n + p)) - log_gamma(0.5 * n) -
                  0.5 * p * std::log(n + p - 2.0));
}

inline std::vector<double> default_alpha_grid() { return {0.0, 0.5, 0.9, 0.99, 0.999}; }

}  // namespace orlicz
