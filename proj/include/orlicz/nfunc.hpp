#pragma once

// N-functions (Young functions) and numerical certification of their growth
// conditions: the two-sided power bounds
//
//   M(a r) <= a^{D_M} M(r)  (a >= 1),     M(a r) <= a^{d_M} M(r)  (0 < a < 1),
//
// the doubling (Delta_2) constant, and the two pointwise lemmas the Hardy
// estimates are built from.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/hash.hpp"

namespace orlicz {

enum class GridScale { log, linear };

struct GridSpec {
  double r_min = 1e-6;
  double r_max = 1e6;
  int points = 400;
  GridScale scale = GridScale::log;

  void validate() const {
    if (points < 2) throw PreconditionError("GridSpec: points must be >= 2");
    if (!(r_min > 0.0) || !(r_min < r_max)) {
      throw PreconditionError("GridSpec: need 0 < r_min < r_max");
    }
  }

  std::vector<double> nodes() const {
    validate();
    std::vector<double> out(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
      const double t = static_cast<double>(i) / (points - 1);
      if (scale == GridScale::log) {
        out[i] = std::exp(std::log(r_min) + t * (std::log(r_max) - std::log(r_min)));
      } else {
        out[i] = r_min + t * (r_max - r_min);
      }
    }
    out.front() = r_min;
    out.back() = r_max;
    return out;
  }

  std::string describe() const {
    return std::string(scale == GridScale::log ? "log" : "linear") + "[" +
           format_double(r_min) + "," + format_double(r_max) + "]x" +
           std::to_string(points);
  }

  std::string fingerprint() const { return hex_fingerprint(describe()); }
};

/// Default certification grid: 400 log-spaced nodes on [1e-6, 1e6].
inline GridSpec default_certification_grid() { return GridSpec{}; }

inline std::vector<double> logspace(double lo, double hi, int points) {
  return GridSpec{lo, hi, points, GridScale::log}.nodes();
}

struct NFunction {
  std::string label;
  std::function<double(double)> eval;
  /// Optional analytic derivative; central differences are used otherwise.
  std::function<double(double)> deriv;
  std::optional<double> d_exp;
  std::optional<double> D_exp;
  std::optional<double> delta2_const;
  /// Set when M(r) = r^p exactly.
  std::optional<double> power_exponent;
  /// Optional s -> log M(e^s); enables log-domain modular integrands.
  std::function<double(double)> log_eval;
  /// True when d_exp/D_exp come from the closed form rather than a grid scan.
  bool exponents_pinned = false;
  /// Grid the exponents were certified on (empty when pinned or uncertified).
  std::string grid_fingerprint;

  double operator()(double r) const { return eval(r); }

  double derivative(double r) const {
    if (deriv) return deriv(r);
    const double h = std::max(1e-6, 1e-6 * r);
    if (r - h < 0.0) return (eval(r + h) - eval(r)) / h;
    return (eval(r + h) - eval(r - h)) / (2.0 * h);
  }

  double lower_exponent() const {
    if (!d_exp) throw PreconditionError(label + ": d_M not certified");
    return *d_exp;
  }
  double upper_exponent() const {
    if (!D_exp) throw PreconditionError(label + ": D_M not certified");
    return *D_exp;
  }
};

/// M(r) = r^p.
inline NFunction power_nfunction(double p, std::string label = {}) {
  if (label.empty()) label = "r^" + format_double(p);
  NFunction nf;
  nf.label = std::move(label);
  nf.eval = [p](double r) { return r <= 0.0 ? 0.0 : std::pow(r, p); };
  nf.deriv = [p](double r) { return r <= 0.0 ? 0.0 : p * std::pow(r, p - 1.0); };
  nf.d_exp = p;
  nf.D_exp = p;
  nf.delta2_const = std::pow(2.0, p);
  nf.power_exponent = p;
  nf.log_eval = [p](double s) { return p * s; };
  nf.exponents_pinned = true;
  return nf;
}

/// M(r) = r^p log(1 + r); satisfies the growth bounds with d_M = p, D_M = p + 1.
inline NFunction power_log_nfunction(double p, std::string label = {}) {
  if (label.empty()) label = "r^" + format_double(p) + "log(1+r)";
  NFunction nf;
  nf.label = std::move(label);
  nf.eval = [p](double r) { return r <= 0.0 ? 0.0 : std::pow(r, p) * std::log1p(r); };
  nf.deriv = [p](double r) {
    if (r <= 0.0) return 0.0;
    return p * std::pow(r, p - 1.0) * std::log1p(r) + std::pow(r, p) / (1.0 + r);
  };
  nf.log_eval = [p](double s) {
    const double l1p = s > 35.0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s));
    return p * s + std::log(l1p);
  };
  nf.d_exp = p;
  nf.D_exp = p + 1.0;
  nf.exponents_pinned = true;
  return nf;
}

/// M(r) = e^r - r - 1: an N-function that is not doubling.
inline NFunction exp_nfunction(std::string label = "exp(r)-r-1") {
  NFunction nf;
  nf.label = std::move(label);
  nf.eval = [](double r) { return r <= 0.0 ? 0.0 : std::expm1(r) - r; };
  nf.deriv = [](double r) { return r <= 0.0 ? 0.0 : std::expm1(r); };
  return nf;
}

inline NFunction constant_nfunction(double c, std::string label = {}) {
  if (label.empty()) label = "const" + format_double(c);
  NFunction nf;
  nf.label = std::move(label);
  nf.eval = [c](double) { return c; };
  nf.deriv = [](double) { return 0.0; };
  return nf;
}

/// Tabulated M from (r, M(r)) pairs, r strictly increasing and M monotone.
/// Interpolation is linear in log-log coordinates where both values are
/// positive; outside the table the end segments are extended as powers.
inline NFunction table_nfunction(std::vector<double> r, std::vector<double> m,
                                 std::string label = "table") {
  if (r.size() < 2 || r.size() != m.size()) {
    throw PreconditionError(label + ": table needs >= 2 matching (r, M) pairs");
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0) || !std::isfinite(m[i]) || m[i] < 0.0) {
      throw PreconditionError(label + ": table entries must have r > 0, M >= 0");
    }
    if (i > 0 && (!(r[i] > r[i - 1]) || m[i] < m[i - 1])) {
      throw PreconditionError(label + ": table must be monotone in r and M");
    }
  }
  auto segment = [r, m](std::size_t i, double x) {
    const double r0 = r[i], r1 = r[i + 1], m0 = m[i], m1 = m[i + 1];
    if (m0 > 0.0 && m1 > 0.0) {
      const double slope = std::log(m1 / m0) / std::log(r1 / r0);
      return m0 * std::exp(slope * std::log(x / r0));
    }
    return std::max(0.0, m0 + (m1 - m0) * (x - r0) / (r1 - r0));
  };
  NFunction nf;
  nf.label = std::move(label);
  nf.eval = [r, segment](double x) {
    if (x <= 0.0) return 0.0;
    if (x <= r.front()) return segment(0, x);
    if (x >= r.back()) return segment(r.size() - 2, x);
    const auto it = std::upper_bound(r.begin(), r.end(), x);
    return segment(static_cast<std::size_t>(it - r.begin()) - 1, x);
  };
  return nf;
}

// --------------------------------------------------------------------------
// Certification

struct GrowthViolation {
  double r1;
  double r2;
  double slope;
  std::string bound;  // "d_M" or "D_M"
};

struct GrowthCertificate {
  double d_est;
  double D_est;
  std::vector<GrowthViolation> violations;
  std::string grid_fingerprint;
};

namespace detail {

inline std::vector<double> certified_values(const NFunction& nf,
                                            const std::vector<double>& nodes) {
  std::vector<double> vals(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double v = nf.eval(nodes[i]);
    if (!std::isfinite(v) || v <= 0.0) {
      throw CertificationError(nf.label + ": M must be finite and positive on the grid, got " +
                                   format_double(v) + " at r=" + format_double(nodes[i]),
                               nodes[i]);
    }
    if (i > 0 && v < vals[i - 1]) {
      throw CertificationError(nf.label + ": M is not monotone at r=" + format_double(nodes[i]),
                               nodes[i]);
    }
    vals[i] = v;
  }
  if (vals.back() == vals.front()) {
    throw CertificationError(nf.label + ": M must be nonconstant on the grid", nodes.front());
  }
  return vals;
}

}  // namespace detail

/// Estimates d_M = inf and D_M = sup of the log-log secant slope
/// log(M(r2)/M(r1)) / log(r2/r1). The slope over any pair of nodes is a
/// weighted mean of the adjacent-pair slopes, so scanning adjacent pairs
/// yields the same extrema (and the same violated bounds) as all pairs.
inline GrowthCertificate certify_growth(const NFunction& nf, const GridSpec& grid,
                                        double exponent_tol = 1e-9) {
  const auto nodes = grid.nodes();
  const auto vals = detail::certified_values(nf, nodes);
  GrowthCertificate cert{std::numeric_limits<double>::infinity(),
                         -std::numeric_limits<double>::infinity(),
                         {},
                         grid.fingerprint()};
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double slope = std::log(vals[i + 1] / vals[i]) / std::log(nodes[i + 1] / nodes[i]);
    cert.d_est = std::min(cert.d_est, slope);
    cert.D_est = std::max(cert.D_est, slope);
    if (nf.d_exp && slope < *nf.d_exp - exponent_tol) {
      cert.violations.push_back({nodes[i], nodes[i + 1], slope, "d_M"});
    }
    if (nf.D_exp && slope > *nf.D_exp + exponent_tol) {
      cert.violations.push_back({nodes[i], nodes[i + 1], slope, "D_M"});
    }
  }
  return cert;
}

struct Delta2Certificate {
  double C_est;
  double argmax;
  bool divergent;
  std::string reason;
};

/// sup over the grid of M(2r)/M(r). Flags divergence when the ratio exceeds
/// `cap` or still grows by more than 10% across the last grid decade.
inline Delta2Certificate certify_delta2(const NFunction& nf, const GridSpec& grid,
                                        double cap = 1e6) {
  const auto nodes = grid.nodes();
  detail::certified_values(nf, nodes);
  Delta2Certificate cert{0.0, nodes.front(), false, {}};
  std::vector<double> ratios(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double num = nf.eval(2.0 * nodes[i]);
    const double ratio = num / nf.eval(nodes[i]);
    ratios[i] = std::isfinite(ratio) ? ratio : std::numeric_limits<double>::infinity();
    if (ratios[i] > cert.C_est) {
      cert.C_est = ratios[i];
      cert.argmax = nodes[i];
    }
  }
  if (!(cert.C_est <= cap)) {
    cert.divergent = true;
    cert.reason = "M(2r)/M(r) = " + format_double(cert.C_est) + " exceeds cap " +
                  format_double(cap) + " at r=" + format_double(cert.argmax);
    return cert;
  }
  const double top = nodes.back();
  std::size_t j = nodes.size() - 1;
  while (j > 0 && nodes[j] > top / 10.0) --j;
  if (j < nodes.size() - 1 && ratios.back() > 1.1 * ratios[j]) {
    cert.divergent = true;
    cert.reason = "M(2r)/M(r) still growing over the last grid decade";
  }
  return cert;
}

/// Midpoint convexity and monotonicity on all adjacent and skip-one node pairs.
inline bool check_convex_increasing(const NFunction& nf, const std::vector<double>& nodes,
                                    double rel_tol = 1e-12) {
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    for (std::size_t k = i + 1; k < std::min(nodes.size(), i + 3); ++k) {
      const double x = nodes[i], y = nodes[k];
      const double mx = nf.eval(x), my = nf.eval(y);
      if (my < mx) return false;
      const double mid = nf.eval(0.5 * (x + y));
      if (mid > 0.5 * (mx + my) + rel_tol * std::max(1.0, 0.5 * (mx + my))) return false;
    }
  }
  return true;
}

// --------------------------------------------------------------------------
// Pointwise lemmas

struct PointwiseCheck {
  double lhs;
  double rhs;
  bool holds;
};

inline double comparison_tolerance(double rhs) { return 1e-12 * std::max(1.0, std::abs(rhs)); }

/// lim_{r->0+} M(r)/r^2 by Richardson extrapolation of two small samples.
inline double quadratic_limit_at_zero(const NFunction& nf) {
  const double h = 1e-6;
  const double f1 = nf.eval(h) / (h * h);
  const double f2 = nf.eval(0.5 * h) / (0.25 * h * h);
  return std::max(0.0, 2.0 * f2 - f1);
}

/// r^{-alpha} M(r) s^alpha against the split bound
///   alpha = 1:  (1 - 1/D)(lambda D)^{-1/(D-1)} M(r) + lambda M(s)
///   alpha = 2:  (1 - 2/D)(lambda D)^{-2/(D-2)} M(r) + 2 lambda M(s)
/// At r = 0 the continuous extension of M(r)/r^alpha is used.
inline PointwiseCheck check_lemma_split(const NFunction& nf, double r, double s, double lambda,
                                        int alpha) {
  if (alpha != 1 && alpha != 2) throw PreconditionError("check_lemma_split: alpha must be 1 or 2");
  const double d = nf.lower_exponent();
  const double D = nf.upper_exponent();
  if (alpha == 2 && !(d >= 2.0 && D > 2.0)) {
    throw HypothesisError(nf.label + ": split lemma with alpha=2 needs d_M >= 2 and D_M > 2");
  }
  if (alpha == 1 && !(D > 1.0)) {
    throw HypothesisError(nf.label + ": split lemma with alpha=1 needs D_M > 1");
  }
  if (lambda < (1.0 / d) * (1.0 - 1e-14)) {
    throw PreconditionError("check_lemma_split: lambda must be >= 1/d_M");
  }
  if (r < 0.0 || s < 0.0) throw PreconditionError("check_lemma_split: r, s must be >= 0");

  double weight_at_r;
  if (r > 0.0) {
    weight_at_r = nf.eval(r) / std::pow(r, alpha);
  } else {
    weight_at_r = alpha == 1 ? 0.0 : quadratic_limit_at_zero(nf);
  }
  const double lhs = weight_at_r * std::pow(s, alpha);
  const double a = alpha;
  const double coef = (1.0 - a / D) * std::pow(lambda * D, -a / (D - a));
  const double rhs = coef * nf.eval(r) + a * lambda * nf.eval(s);
  return {lhs, rhs, lhs <= rhs + comparison_tolerance(rhs)};
}

/// M(a) b <= eps M(a) + eps^{-D_M} M(a b) for eps in (0, 1].
inline PointwiseCheck check_lemma_young(const NFunction& nf, double a, double b, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw PreconditionError("check_lemma_young: eps must be in (0,1]");
  if (a < 0.0 || b < 0.0) throw PreconditionError("check_lemma_young: a, b must be >= 0");
  const double D = nf.upper_exponent();
  const double lhs = nf.eval(a) * b;
  const double rhs = eps * nf.eval(a) + std::pow(eps, -D) * nf.eval(a * b);
  return {lhs, rhs, lhs <= rhs + comparison_tolerance(rhs)};
}

}  // namespace orlicz
