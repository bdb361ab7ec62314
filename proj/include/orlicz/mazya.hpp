#pragma once

// Two-weight Hardy transform inequality
//
//   (∫_a^∞ |∫_a^x f|^q dμ(x))^{1/q} <= C (∫_a^∞ |f|^p dν)^{1/p},   1 < p <= q < ∞,
//
// and its characterisation by
//
//   B = sup_{r>a} μ([r,∞))^{1/q} (∫_a^r (dν*/dx)^{-1/(p-1)} dx)^{(p-1)/p}.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/hash.hpp"
#include "orlicz/nfunc.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/report.hpp"
#include "orlicz/special.hpp"

namespace orlicz {

struct MeasurePair {
  std::string label;
  double a = 0.0;
  std::function<double(double)> mu_tail;     // r -> μ([r, ∞))
  std::function<double(double)> mu_density;  // x -> dμ/dx
  std::function<double(double)> nu_density;  // x -> dν*/dx
  double p = 2.0;
  double q = 2.0;
  /// Offsets from a of the r-range scanned for the supremum.
  double r_lo = 1e-6;
  double r_hi = 1e3;

  void validate() const {
    if (!mu_tail || !nu_density) throw PreconditionError(label + ": incomplete measure pair");
    if (!(p >= 1.0 && p <= q) || !std::isfinite(q)) {
      throw PreconditionError(label + ": need 1 <= p <= q < inf");
    }
    if (p == 1.0) {
      throw PreconditionError(label + ": p = 1 has no (p-1)-th root in the B functional");
    }
    if (!(r_lo > 0.0 && r_hi > r_lo)) throw PreconditionError(label + ": bad r-range");
  }
};

/// dμ = x^{-2} dx, dν = dx on (0, ∞), p = q = 2.
inline MeasurePair classical_hardy_pair() {
  MeasurePair m;
  m.label = "classical";
  m.a = 0.0;
  m.mu_tail = [](double r) { return 1.0 / r; };
  m.mu_density = [](double x) { return 1.0 / (x * x); };
  m.nu_density = [](double) { return 1.0; };
  m.p = 2.0;
  m.q = 2.0;
  m.r_lo = 1e-6;
  m.r_hi = 1e6;
  return m;
}

/// dμ = r^p dμ_n, dν = dμ_n on (0, ∞), q = p.
inline MeasurePair gaussian_measure_pair(double p, int n) {
  if (n < 1) throw PreconditionError("gaussian_measure_pair: n must be >= 1");
  MeasurePair m;
  m.label = "gaussian(p=" + format_double(p) + ",n=" + std::to_string(n) + ")";
  m.a = 0.0;
  const double s = 0.5 * (p + n);
  const double total = moment(n, p);
  m.mu_tail = [s, total](double r) { return total * gamma_q(s, 0.5 * r * r); };
  m.mu_density = [p, n](double x) {
    return std::exp((p + n - 1.0) * std::log(x) - 0.5 * x * x);
  };
  m.nu_density = [n](double x) {
    return (n == 1 ? 1.0 : std::pow(x, n - 1)) * std::exp(-0.5 * x * x);
  };
  m.p = p;
  m.q = p;
  m.r_lo = 1e-6;
  // keep exp(r²/(2(p-1))) from the inner integrand well inside double range
  m.r_hi = std::min(20.0, std::sqrt(1000.0 * std::max(p - 1.0, 1e-3)));
  return m;
}

/// Tabulated pair: μ([x,∞)) and dν/dx at increasing nodes, interpolated
/// linearly; μ has density -d/dx μ([x,∞)) on each cell.
inline MeasurePair table_measure_pair(std::vector<double> x, std::vector<double> mu_tail,
                                      std::vector<double> nu_density, double p, double q,
                                      double a = 0.0) {
  if (x.size() < 2 || x.size() != mu_tail.size() || x.size() != nu_density.size()) {
    throw PreconditionError("table_measure_pair: need >= 2 matching nodes");
  }
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) throw PreconditionError("table_measure_pair: nodes must increase");
    if (mu_tail[i] > mu_tail[i - 1]) {
      throw PreconditionError("table_measure_pair: mu tail must be non-increasing");
    }
  }
  auto interp = [x](const std::vector<double>& y, double t) {
    if (t <= x.front()) return y.front();
    if (t >= x.back()) return y.back();
    const auto it = std::upper_bound(x.begin(), x.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
    const double w = (t - x[i]) / (x[i + 1] - x[i]);
    return y[i] + w * (y[i + 1] - y[i]);
  };
  MeasurePair m;
  m.label = "table";
  m.a = a;
  m.mu_tail = [interp, mu_tail, x](double r) {
    if (r >= x.back()) return mu_tail.back();
    return interp(mu_tail, r);
  };
  m.mu_density = [x, mu_tail](double t) {
    if (t <= x.front() || t >= x.back()) return 0.0;
    const auto it = std::upper_bound(x.begin(), x.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
    return (mu_tail[i] - mu_tail[i + 1]) / (x[i + 1] - x[i]);
  };
  m.nu_density = [interp, nu_density](double t) { return interp(nu_density, t); };
  m.p = p;
  m.q = q;
  m.r_lo = std::max(1e-6, x.front() - a);
  m.r_hi = x.back() - a;
  return m;
}

struct InnerIntegral {
  double value = 0.0;
  bool divergent = false;
  std::string reason;
};

/// ∫_a^{a+h} (dν/dx)^{-1/(p-1)} dx over dyadic panels shrinking to a. The
/// integral is declared divergent when the density vanishes, when the partial
/// sum exceeds 1e12, or when successive panel contributions stop decaying.
inline InnerIntegral inner_integral_near_a(const MeasurePair& m, double h) {
  const double expo = -1.0 / (m.p - 1.0);
  auto g = [&](double x) {
    const double d = m.nu_density(x);
    if (!(d > 0.0)) {
      throw EvaluationError("nu density vanishes at x=" + format_double(x), x);
    }
    return std::pow(d, expo);
  };
  InnerIntegral out;
  double hi = h;
  double prev = 0.0;
  std::vector<double> contributions;
  try {
    for (int k = 0; k < 400; ++k) {
      const double lo = 0.5 * hi;
      const double c =
          integrate_interval(g, m.a + lo, m.a + hi, 1e-12, 1e-300, {}, 2000, 2).value;
      contributions.push_back(c);
      out.value += c;
      if (!(out.value <= 1e12)) {
        out.divergent = true;
        out.reason = "inner integral exceeds 1e12 near a";
        return out;
      }
      if (c <= 1e-16 * out.value) return out;
      if (k >= 16 && c / prev >= 0.97) {
        out.divergent = true;
        out.reason = "small-x panel contributions do not decay (ratio " +
                     format_double(c / prev) + ")";
        return out;
      }
      prev = c;
      hi = lo;
    }
  } catch (const EvaluationError& e) {
    out.divergent = true;
    out.reason = e.what();
    return out;
  }
  // geometric tail of the remaining panels
  const std::size_t k = contributions.size();
  const double ratio = contributions[k - 1] / contributions[k - 2];
  if (ratio >= 0.97) {
    out.divergent = true;
    out.reason = "small-x panel contributions do not decay";
    return out;
  }
  out.value += contributions[k - 1] * ratio / (1.0 - ratio);
  return out;
}

struct MazyaResult {
  double value = 0.0;
  double argmax_r = 0.0;
  bool divergent = false;
  std::string reason;
  /// (r, B(r)) on the scan grid.
  std::vector<std::pair<double, double>> objective;
};

struct MazyaOptions {
  int grid_points = 241;
  double cap = 1e12;
  /// Log-log slope of the objective at either end above which it is
  /// treated as still growing.
  double boundary_slope = 0.05;
};

/// B over a log grid of r - a in [r_lo, r_hi], refined by golden section
/// around the best node.
inline MazyaResult mazya_B(const MeasurePair& m, const MazyaOptions& opt = {}) {
  m.validate();
  const double expo = -1.0 / (m.p - 1.0);
  auto g = [&](double x) {
    const double d = m.nu_density(x);
    if (!(d > 0.0)) throw EvaluationError("nu density vanishes at x=" + format_double(x), x);
    return std::pow(d, expo);
  };
  const auto offsets = logspace(m.r_lo, m.r_hi, opt.grid_points);
  MazyaResult out;
  const auto near = inner_integral_near_a(m, offsets.front());
  if (near.divergent) {
    out.divergent = true;
    out.value = std::numeric_limits<double>::infinity();
    out.reason = near.reason;
    return out;
  }
  auto log_objective = [&](double r, double inner) {
    const double tail = m.mu_tail(r);
    if (!(tail > 0.0) || !(inner > 0.0)) return -std::numeric_limits<double>::infinity();
    return std::log(tail) / m.q + (m.p - 1.0) / m.p * std::log(inner);
  };
  std::vector<double> inner(offsets.size()), logB(offsets.size());
  double acc = near.value;
  try {
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      if (i > 0) {
        acc += integrate_interval(g, m.a + offsets[i - 1], m.a + offsets[i], 1e-12, 1e-300).value;
      }
      inner[i] = acc;
      logB[i] = log_objective(m.a + offsets[i], acc);
    }
  } catch (const EvaluationError& e) {
    out.divergent = true;
    out.value = std::numeric_limits<double>::infinity();
    out.reason = e.what();
    return out;
  }
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    out.objective.emplace_back(m.a + offsets[i], std::exp(logB[i]));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < logB.size(); ++i) {
    if (logB[i] > logB[best]) best = i;
  }
  out.value = std::exp(logB[best]);
  out.argmax_r = m.a + offsets[best];

  if (!(out.value <= opt.cap)) {
    out.divergent = true;
    out.reason = "objective exceeds cap " + format_double(opt.cap);
    return out;
  }
  const std::size_t last = offsets.size() - 1;
  const std::size_t span = std::max<std::size_t>(2, offsets.size() / 20);
  const double top_slope = (logB[last] - logB[last - span]) /
                           std::log(offsets[last] / offsets[last - span]);
  const double bottom_slope = (logB[span] - logB[0]) / std::log(offsets[span] / offsets[0]);
  if (top_slope > opt.boundary_slope) {
    out.divergent = true;
    out.reason = "objective still growing at the upper end of the r-grid (slope " +
                 format_double(top_slope) + ")";
    return out;
  }
  if (bottom_slope < -opt.boundary_slope) {
    out.divergent = true;
    out.reason = "objective still growing toward r = a (slope " + format_double(bottom_slope) + ")";
    return out;
  }

  // golden-section refinement in log(r - a) between the neighbours of the best node
  if (best > 0 && best < last) {
    auto objective_at = [&](double logoff) {
      const double off = std::exp(logoff);
      const std::size_t base = off >= offsets[best] ? best : best - 1;
      const double in = inner[base] + integrate_interval(g, m.a + offsets[base], m.a + off,
                                                         1e-12, 1e-300)
                                          .value;
      return log_objective(m.a + off, in);
    };
    double lo = std::log(offsets[best - 1]), hi = std::log(offsets[best + 1]);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - invphi * (hi - lo), d = lo + invphi * (hi - lo);
    double fc = objective_at(c), fd = objective_at(d);
    for (int it = 0; it < 100 && hi - lo > 1e-10; ++it) {
      if (fc > fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - invphi * (hi - lo);
        fc = objective_at(c);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + invphi * (hi - lo);
        fd = objective_at(d);
      }
    }
    const double refined = std::max(fc, fd);
    if (refined > logB[best]) {
      out.value = std::exp(refined);
      out.argmax_r = m.a + std::exp(fc > fd ? c : d);
    }
  }
  return out;
}

/// (1 + q/p')^{1/q} (1 + p'/q)^{1/p'}: ratio between the best transform
/// constant and B, with p' = p/(p-1).
inline double mazya_factor(double p, double q) {
  const double pp = p / (p - 1.0);
  return std::pow(1.0 + q / pp, 1.0 / q) * std::pow(1.0 + pp / q, 1.0 / pp);
}

struct GaussianHardyVerdict {
  bool finite = false;
  bool expected_finite = false;
  MazyaResult mazya;
  CheckReport report;
};

/// Runs mazya_B on the Gaussian pair; finiteness is expected exactly when p > n.
inline GaussianHardyVerdict gaussian_hardy_pq(double p, int n, const MazyaOptions& opt = {}) {
  if (!(p > 1.0)) throw PreconditionError("gaussian_hardy_pq: p must be > 1");
  GaussianHardyVerdict v;
  v.mazya = mazya_B(gaussian_measure_pair(p, n), opt);
  v.finite = !v.mazya.divergent;
  v.expected_finite = p > n;
  const std::string subject = "p=" + format_double(p) + ";n=" + std::to_string(n);
  v.report = make_report(InequalityId::mazya_gaussian, subject, 0.0,
                         v.finite == v.expected_finite ? 0.0 : -1.0, 0.0,
                         {{"p", p}, {"n", n}});
  v.report.lhs = 0.0;
  v.report.terms = {{"B", v.finite ? v.mazya.value : std::numeric_limits<double>::infinity()},
                    {"argmax_r", v.mazya.argmax_r}};
  v.report.note = std::string(v.finite ? "finite" : "divergent") +
                  (v.finite == v.expected_finite ? " as predicted by p>n" : " CONTRADICTS p>n") +
                  (v.mazya.reason.empty() ? "" : "; " + v.mazya.reason);
  return v;
}

/// Both sides of the transform inequality for a given f; `support` bounds
/// supp f and `breaks` marks its kinks.
inline CheckReport check_hardy_transform(const std::function<double(double)>& f,
                                         const MeasurePair& m, double C,
                                         std::span<const double> breaks = {},
                                         const std::string& subject = {},
                                         std::optional<double> B = std::nullopt) {
  m.validate();
  if (!m.mu_density) throw PreconditionError(m.label + ": transform check needs a mu density");
  const double rel = 1e-10, abs = 1e-300;
  std::vector<double> cuts(breaks.begin(), breaks.end());
  std::sort(cuts.begin(), cuts.end());
  auto F = [&](double x) {
    if (x <= m.a) return 0.0;
    return integrate_interval(f, m.a, x, rel, abs, cuts, 2000, 2).value;
  };
  const auto lhs_int = integrate_to_infinity(
      [&](double x) {
        const double w = m.mu_density(x);
        if (w == 0.0) return 0.0;
        const double v = std::abs(F(x));
        return v == 0.0 ? 0.0 : std::pow(v, m.q) * w;
      },
      m.a, 1e-9, abs, cuts);
  const auto rhs_int = integrate_to_infinity(
      [&](double x) {
        const double v = std::abs(f(x));
        return v == 0.0 ? 0.0 : std::pow(v, m.p) * m.nu_density(x);
      },
      m.a, 1e-9, abs, cuts);
  const double lhs = std::pow(lhs_int.value, 1.0 / m.q);
  const double rhs0 = std::pow(rhs_int.value, 1.0 / m.p);
  std::map<std::string, double> constants{{"C", C}, {"p", m.p}, {"q", m.q},
                                          {"factor", mazya_factor(m.p, m.q)}};
  if (B) constants["B"] = *B;
  if (!std::isfinite(rhs0)) {
    CheckReport r;
    r.id = InequalityId::hardy_transform;
    r.subject = subject;
    r.lhs = lhs;
    r.rhs = rhs0;
    r.verdict = Verdict::indeterminate;
    r.note = "right-hand side diverges";
    r.constants_used = constants;
    return r;
  }
  const double err = 1e-8 * (lhs + C * rhs0);
  auto r = make_report(InequalityId::hardy_transform, subject, lhs, C * rhs0, err, constants);
  r.terms = {{"lhs", lhs}, {"rhs_without_C", rhs0},
             {"ratio", rhs0 > 0.0 ? lhs / rhs0 : 0.0}};
  return r;
}

}  // namespace orlicz
