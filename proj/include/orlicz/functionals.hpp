#pragma once

// Modular functionals, Luxemburg norms and the cut-off operator used to pass
// from compactly supported to general test functions.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/nfunc.hpp"
#include "orlicz/quadrature.hpp"

namespace orlicz {

/// Decay metadata. For `decaying`, |u(r)| <= C r^degree e^{-rate r²/2}
/// for large r; a negative rate means Gaussian growth.
struct SupportHint {
  enum class Kind { compact, decaying };
  Kind kind = Kind::decaying;
  double radius = 0.0;
  double degree = 0.0;
  double rate = 0.0;

  static SupportHint compact(double radius) { return {Kind::compact, radius, 0.0, 0.0}; }
  static SupportHint decaying(double degree, double rate) {
    return {Kind::decaying, 0.0, degree, rate};
  }
  bool is_compact() const { return kind == Kind::compact; }
};

struct RadialTestFunction {
  std::string label;
  std::function<double(double)> u;
  std::function<double(double)> du;
  std::vector<double> breakpoints;
  SupportHint support;
  /// Optional log|u| and log|u'|; used to avoid overflow for growing u.
  std::function<double(double)> log_abs_u;
  std::function<double(double)> log_abs_du;
  std::string hypothesis_class = "continuous, piecewise C1";
};

struct FieldFunction {
  std::string label;
  int n = 1;
  std::function<double(Point)> u;
  std::function<std::vector<double>(Point)> grad;
  /// Row-major n x n Hessian; optional.
  std::function<std::vector<double>(Point)> hess;
  SupportHint support;
  bool radial = false;
  std::string hypothesis_class = "C2, rapidly decaying";
};

struct ModularTriple {
  double K = 0.0;
  double L = 0.0;
  double G = 0.0;
  double err_K = 0.0;
  double err_L = 0.0;
  double err_G = 0.0;
  bool divergent_K = false;
  bool divergent_L = false;
  bool divergent_G = false;
  std::string note;

  bool valid() const {
    const bool finite = std::isfinite(K) && std::isfinite(L) && std::isfinite(G);
    return finite && K >= 0.0 && L >= 0.0 && G >= 0.0 && !divergent_K && !divergent_L &&
           !divergent_G;
  }
  bool any_divergent() const { return divergent_K || divergent_L || divergent_G; }

  ModularTriple scaled(double c) const {
    ModularTriple t = *this;
    t.K *= c;
    t.L *= c;
    t.G *= c;
    t.err_K *= c;
    t.err_L *= c;
    t.err_G *= c;
    return t;
  }
};

// --------------------------------------------------------------------------
// Validation

struct FunctionValidation {
  bool ok = true;
  double max_jump = 0.0;
  double max_derivative_deviation = 0.0;
  double worst_location = 0.0;
  std::string reason;
};

/// Continuity across breakpoints and agreement of du with central differences.
inline FunctionValidation validate_radial(const RadialTestFunction& f, int samples = 97) {
  FunctionValidation v;
  for (double b : f.breakpoints) {
    if (b <= 1e-8) continue;
    const double left = f.u(b - 1e-8), right = f.u(b + 1e-8);
    const double jump = std::abs(left - right);
    const double scale = std::max(1.0, std::max(std::abs(left), std::abs(right)));
    v.max_jump = std::max(v.max_jump, jump / scale);
    if (jump > 1e-6 * scale) {
      v.ok = false;
      v.worst_location = b;
      v.reason = "discontinuous at breakpoint r=" + format_double(b);
    }
  }
  const double top = f.support.is_compact() ? f.support.radius : 6.0;
  for (int i = 1; i < samples; ++i) {
    const double r = top * i / samples;
    bool near_break = false;
    for (double b : f.breakpoints) near_break = near_break || std::abs(r - b) < 1e-3;
    if (near_break) continue;
    const double h = 1e-5 * std::max(1.0, r);
    if (r - h <= 0.0) continue;
    const double fd = (f.u(r + h) - f.u(r - h)) / (2.0 * h);
    const double an = f.du(r);
    const double scale = std::max({1.0, std::abs(an), std::abs(f.u(r))});
    const double dev = std::abs(fd - an) / scale;
    if (dev > v.max_derivative_deviation) {
      v.max_derivative_deviation = dev;
      if (dev > 1e-6) {
        v.ok = false;
        v.worst_location = r;
        v.reason = "du deviates from finite differences by " + format_double(dev) +
                   " (relative) at r=" + format_double(r);
      }
    }
  }
  return v;
}

/// Gradient against central differences (step 1e-5, 1e-4 relative) and
/// Hessian symmetry, at seeded sample points in the ball of radius 3.
inline FunctionValidation validate_field(const FieldFunction& f, std::uint64_t seed = 7,
                                         int samples = 24) {
  FunctionValidation v;
  if (!f.grad) {
    v.ok = false;
    v.reason = "missing gradient";
    return v;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  std::vector<double> x(f.n), xp(f.n), xm(f.n);
  for (int s = 0; s < samples; ++s) {
    for (auto& c : x) c = unif(rng);
    const auto g = f.grad(x);
    for (int i = 0; i < f.n; ++i) {
      xp = x;
      xm = x;
      const double h = 1e-5;
      xp[i] += h;
      xm[i] -= h;
      const double fd = (f.u(xp) - f.u(xm)) / (2.0 * h);
      const double dev = std::abs(fd - g[i]) / std::max(1.0, std::abs(g[i]));
      if (dev > v.max_derivative_deviation) {
        v.max_derivative_deviation = dev;
        v.worst_location = x[0];
      }
      if (dev > 1e-4) {
        v.ok = false;
        v.reason = "gradient component " + std::to_string(i) + " deviates by " +
                   format_double(dev);
      }
    }
    if (f.hess) {
      const auto H = f.hess(x);
      for (int i = 0; i < f.n; ++i) {
        for (int j = i + 1; j < f.n; ++j) {
          const double a = H[i * f.n + j], b = H[j * f.n + i];
          if (std::abs(a - b) > 1e-10 * std::max(1.0, std::abs(a))) {
            v.ok = false;
            v.reason = "Hessian not symmetric";
          }
        }
      }
    }
  }
  return v;
}

// --------------------------------------------------------------------------
// Norm helpers

inline double euclidean_norm(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

/// Hilbert-Schmidt norm of a row-major n x n matrix. Entries (i,j) and (j,i)
/// are combined pairwise so the result is bit-identical for A and A^T.
inline double hilbert_schmidt_norm(std::span<const double> a, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    s += a[i * n + i] * a[i * n + i];
    for (int j = i + 1; j < n; ++j) {
      const double x = a[i * n + j], y = a[j * n + i];
      s += x * x + y * y;
    }
  }
  return std::sqrt(s);
}

// --------------------------------------------------------------------------
// Radial modulars

namespace detail {

/// Envelope of r^extra |u|^... inside M, given the growth exponents of M.
struct ModularEnvelope {
  bool divergent = false;
  bool uncertain = false;
  RadialEnvelope env;
};

inline ModularEnvelope modular_envelope(const SupportHint& hint, const NFunction& nf,
                                        double extra_degree) {
  ModularEnvelope out;
  const double D = nf.D_exp.value_or(8.0);
  const double d = nf.d_exp.value_or(1.0);
  if (hint.is_compact()) {
    out.env.compact = hint.radius;
    return out;
  }
  out.env.degree = D * (hint.degree + extra_degree);
  if (hint.rate >= 0.0) {
    out.env.rate = 1.0;
    return out;
  }
  const double upper = 1.0 + D * hint.rate;  // guaranteed-convergence rate
  const double lower = 1.0 + d * hint.rate;  // divergence certain at or below 0
  if (lower <= 0.0) {
    out.divergent = true;
    return out;
  }
  if (upper > 0.0) {
    out.env.rate = upper;
  } else {
    out.env.rate = 0.5 * lower;
    out.uncertain = true;
  }
  return out;
}

struct ComponentResult {
  double value;
  double err;
  bool divergent;
  std::string note;
};

template <class H>
ComponentResult modular_component(const H& weighted, int n, const QuadratureSpec& spec,
                                  const ModularEnvelope& me, std::span<const double> breaks) {
  if (me.divergent) {
    return {std::numeric_limits<double>::infinity(), 0.0, true,
            "modular diverges: Gaussian growth of u beats the measure"};
  }
  try {
    const auto res = integrate_radial_weighted(weighted, n, spec, me.env, breaks);
    return {res.value, res.err_est, false, {}};
  } catch (const EvaluationError& e) {
    if (!me.uncertain) throw;
    return {std::numeric_limits<double>::infinity(), 0.0, true, e.what()};
  } catch (const AccuracyError& e) {
    if (!me.uncertain) throw;
    return {std::numeric_limits<double>::infinity(), 0.0, true, e.what()};
  }
}

inline double log_radial_weight(double r, int n) {
  return (n == 1 ? 0.0 : (n - 1) * std::log(r)) - 0.5 * r * r;
}

inline double radial_weight(double r, int n) {
  return (n == 1 ? 1.0 : std::pow(r, n - 1)) * std::exp(-0.5 * r * r);
}

}  // namespace detail

/// K = ∫ M(r|u|) dμ_n, L = ∫ M(|u|) dμ_n, G = ∫ M(|u'|) dμ_n.
inline ModularTriple modular_triple_radial(const RadialTestFunction& f, const NFunction& nf,
                                           int n, const QuadratureSpec& spec = {}) {
  if (n < 1) throw PreconditionError("modular_triple_radial: n must be >= 1");
  const auto envK = detail::modular_envelope(f.support, nf, 1.0);
  const auto envL = detail::modular_envelope(f.support, nf, 0.0);
  const auto envG = detail::modular_envelope(f.support, nf, 1.0);
  std::span<const double> breaks(f.breakpoints);

  const bool log_path = nf.log_eval && f.log_abs_u && f.log_abs_du;
  detail::ComponentResult k, l, g;
  if (log_path) {
    auto log_term = [&](double r, double log_arg) {
      if (r <= 0.0 || log_arg == -std::numeric_limits<double>::infinity()) return 0.0;
      return std::exp(nf.log_eval(log_arg) + detail::log_radial_weight(r, n));
    };
    auto hk = [&](double r) { return log_term(r, std::log(r) + f.log_abs_u(r)); };
    auto hl = [&](double r) { return log_term(r, f.log_abs_u(r)); };
    auto hg = [&](double r) { return log_term(r, f.log_abs_du(r)); };
    k = detail::modular_component(hk, n, spec, envK, breaks);
    l = detail::modular_component(hl, n, spec, envL, breaks);
    g = detail::modular_component(hg, n, spec, envG, breaks);
  } else {
    auto weighted = [n](double r, double m) {
      if (m == 0.0) return 0.0;
      return m * detail::radial_weight(r, n);
    };
    auto hk = [&](double r) { return weighted(r, nf.eval(r * std::abs(f.u(r)))); };
    auto hl = [&](double r) { return weighted(r, nf.eval(std::abs(f.u(r)))); };
    auto hg = [&](double r) { return weighted(r, nf.eval(std::abs(f.du(r)))); };
    k = detail::modular_component(hk, n, spec, envK, breaks);
    l = detail::modular_component(hl, n, spec, envL, breaks);
    g = detail::modular_component(hg, n, spec, envG, breaks);
  }
  ModularTriple t{k.value, l.value, g.value, k.err, l.err, g.err,
                  k.divergent, l.divergent, g.divergent, {}};
  for (const auto* c : {&k, &l, &g}) {
    if (!c->note.empty()) t.note = c->note;
  }
  return t;
}

// --------------------------------------------------------------------------
// n-dimensional modulars

inline RadialEnvelope field_envelope(const SupportHint& hint, const NFunction& nf,
                                     double extra_degree) {
  RadialEnvelope env;
  if (hint.is_compact()) {
    env.compact = hint.radius;
    return env;
  }
  env.degree = nf.D_exp.value_or(8.0) * (hint.degree + extra_degree);
  env.rate = hint.rate >= 0.0 ? 1.0 : 1.0 + nf.D_exp.value_or(8.0) * hint.rate;
  if (!(env.rate > 0.0)) throw DivergenceError("field modular diverges for this N-function");
  return env;
}

/// ∫_{R^n} M(g(x)) dγ_n for a nonnegative scalar field g.
template <class Scalar>
NdResult modular_nd(const Scalar& g, const NFunction& nf, int n, const QuadratureSpec& spec,
                    const RadialEnvelope& env) {
  auto integrand = [&](Point x) { return nf.eval(g(x)); };
  return integrate_gaussian_nd(integrand, n, spec, env);
}

/// K^(n) = ∫ M(|x||u|) dγ_n, L^(n) = ∫ M(|u|) dγ_n, G^(n) = ∫ M(|∇u|) dγ_n.
inline ModularTriple modular_triple_nd(const FieldFunction& f, const NFunction& nf,
                                       const QuadratureSpec& spec = {}) {
  if (!f.grad) throw PreconditionError(f.label + ": modular_triple_nd needs a gradient");
  const int n = f.n;
  auto k = modular_nd([&](Point x) { return euclidean_norm(x) * std::abs(f.u(x)); }, nf, n, spec,
                      field_envelope(f.support, nf, 1.0));
  auto l = modular_nd([&](Point x) { return std::abs(f.u(x)); }, nf, n, spec,
                      field_envelope(f.support, nf, 0.0));
  auto g = modular_nd([&](Point x) { return euclidean_norm(f.grad(x)); }, nf, n, spec,
                      field_envelope(f.support, nf, 1.0));
  ModularTriple t{k.value, l.value, g.value, k.err_est, l.err_est, g.err_est,
                  false, false, false, {}};
  if (k.accuracy_warning || l.accuracy_warning || g.accuracy_warning) {
    t.note = "angular sampling error above rel_tol";
  }
  return t;
}

// --------------------------------------------------------------------------
// Luxemburg norm

struct LuxemburgOptions {
  double rel_tol = 1e-9;
  int max_scaling_steps = 60;
  int max_bisections = 200;
};

/// Solves modular(K) = ∫ M(|f|/K) dμ = 1 for K by doubling/halving from
/// K = 1 and bisection in log K. Returns 0 when the modular vanishes.
inline double luxemburg_from_modular(const std::function<double(double)>& modular,
                                     const LuxemburgOptions& opt = {}) {
  auto m = [&](double K) {
    const double v = modular(K);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };
  auto in_band = [&](double v) { return std::abs(v - 1.0) <= opt.rel_tol; };
  double K = 1.0;
  double v = m(K);
  if (in_band(v)) return K;
  if (v == 0.0) {
    if (m(std::ldexp(1.0, -opt.max_scaling_steps)) == 0.0) return 0.0;
  }
  double lo, hi;  // m(lo) >= 1 >= m(hi)
  if (v > 1.0) {
    lo = K;
    hi = K;
    int steps = 0;
    while (v > 1.0) {
      if (++steps > opt.max_scaling_steps) {
        throw DivergenceError("luxemburg_norm: modular stays above 1 up to K=2^" +
                              std::to_string(opt.max_scaling_steps));
      }
      lo = hi;
      hi *= 2.0;
      v = m(hi);
      if (in_band(v)) return hi;
    }
  } else {
    lo = K;
    hi = K;
    int steps = 0;
    while (v < 1.0) {
      if (++steps > opt.max_scaling_steps) {
        throw DivergenceError("luxemburg_norm: modular stays below 1 down to K=2^-" +
                              std::to_string(opt.max_scaling_steps));
      }
      hi = lo;
      lo *= 0.5;
      v = m(lo);
      if (in_band(v)) return lo;
    }
  }
  for (int it = 0; it < opt.max_bisections; ++it) {
    const double mid = std::sqrt(lo * hi);
    const double mv = m(mid);
    if (in_band(mv)) return mid;
    if (mv > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi / lo - 1.0 < 1e-15) return mid;
  }
  return std::sqrt(lo * hi);
}

/// ‖f‖ in L^M((0,∞), μ_n). `env` describes f itself (degree, Gaussian rate).
inline double luxemburg_norm_radial(const std::function<double(double)>& f, const NFunction& nf,
                                    int n, const QuadratureSpec& spec,
                                    const SupportHint& hint = SupportHint::decaying(0.0, 0.0),
                                    std::span<const double> breaks = {},
                                    const LuxemburgOptions& opt = {}) {
  const auto me = detail::modular_envelope(hint, nf, 0.0);
  if (me.divergent) throw DivergenceError("luxemburg_norm: f is not in L^M for this measure");
  auto modular = [&](double K) {
    auto h = [&](double r) {
      if (nf.log_eval) {
        const double a = std::abs(f(r));
        if (a == 0.0 || r <= 0.0) return 0.0;
        return std::exp(nf.log_eval(std::log(a / K)) + detail::log_radial_weight(r, n));
      }
      const double m = nf.eval(std::abs(f(r)) / K);
      return m == 0.0 ? 0.0 : m * detail::radial_weight(r, n);
    };
    return integrate_radial_weighted(h, n, spec, me.env, breaks).value;
  };
  return luxemburg_from_modular(modular, opt);
}

/// ‖g‖ in L^M(R^n, γ_n) for a scalar field g.
inline double luxemburg_norm_nd(const std::function<double(Point)>& g, const NFunction& nf,
                                int n, const QuadratureSpec& spec, const RadialEnvelope& env,
                                const LuxemburgOptions& opt = {}) {
  auto modular = [&](double K) {
    return integrate_gaussian_nd([&](Point x) { return nf.eval(std::abs(g(x)) / K); }, n, spec,
                                 env)
        .value;
  };
  return luxemburg_from_modular(modular, opt);
}

// --------------------------------------------------------------------------
// Truncation

/// u_N = u on [0,N], ((2N - r)/N) u on [N,2N], 0 beyond.
inline RadialTestFunction truncate(const RadialTestFunction& f, double N) {
  if (!(N >= 1.0)) throw PreconditionError("truncate: N must be >= 1");
  RadialTestFunction t;
  t.label = f.label + "|N=" + format_double(N);
  auto u = f.u;
  auto du = f.du;
  t.u = [u, N](double r) {
    if (r <= N) return u(r);
    if (r >= 2.0 * N) return 0.0;
    return (2.0 * N - r) / N * u(r);
  };
  t.du = [u, du, N](double r) {
    if (r < N) return du(r);
    if (r > 2.0 * N) return 0.0;
    return (2.0 * N - r) / N * du(r) - u(r) / N;
  };
  for (double b : f.breakpoints) {
    if (b < 2.0 * N) t.breakpoints.push_back(b);
  }
  t.breakpoints.push_back(N);
  t.breakpoints.push_back(2.0 * N);
  std::sort(t.breakpoints.begin(), t.breakpoints.end());
  t.breakpoints.erase(std::unique(t.breakpoints.begin(), t.breakpoints.end()),
                      t.breakpoints.end());
  t.support = SupportHint::compact(f.support.is_compact() ? std::min(f.support.radius, 2.0 * N)
                                                          : 2.0 * N);
  t.hypothesis_class = "continuous, piecewise C1, compact support";
  return t;
}

}  // namespace orlicz
