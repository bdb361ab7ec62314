#pragma once

// Test-function families: 1-d radial kinds and n-d fields of the form
// monomial(x) * profile(|x|) with analytic gradient and Hessian.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/functionals.hpp"
#include "orlicz/hash.hpp"

namespace orlicz {

// --------------------------------------------------------------------------
// Radial profiles

/// (φ, φ'/r, (φ'' - φ'/r)/r²) at r; the last two stay bounded at r = 0 for
/// smooth even profiles.
using ProfileJet = std::array<double, 3>;

struct RadialProfile {
  std::string label;
  std::function<ProfileJet(double)> jet;
  /// |φ(r)| <= C r^degree e^{-rate r²/2}; rate < 0 means growth.
  double degree = 0.0;
  double rate = 0.0;
  std::optional<double> compact;

  double value(double r) const { return jet(r)[0]; }
  double derivative(double r) const { return r * jet(r)[1]; }
  double second_derivative(double r) const {
    const auto j = jet(r);
    return j[2] * r * r + j[1];
  }
};

/// e^{-c r²/2}.
inline RadialProfile gaussian_profile(double c) {
  RadialProfile p;
  p.label = "gauss(" + format_double(c) + ")";
  p.jet = [c](double r) {
    const double v = std::exp(-0.5 * c * r * r);
    return ProfileJet{v, -c * v, c * c * v};
  };
  p.rate = c;
  return p;
}

/// r².
inline RadialProfile square_profile() {
  RadialProfile p;
  p.label = "r2";
  p.jet = [](double r) { return ProfileJet{r * r, 2.0, 0.0}; };
  p.degree = 2.0;
  return p;
}

/// 1 on [0, r0], 0 beyond r1, quintic smoothstep in between (C²).
inline RadialProfile cutoff_profile(double r0, double r1) {
  if (!(r0 > 0.0 && r1 > r0)) throw PreconditionError("cutoff_profile: need 0 < r0 < r1");
  RadialProfile p;
  p.label = "cutoff(" + format_double(r0) + "," + format_double(r1) + ")";
  const double h = r1 - r0;
  p.jet = [r0, r1, h](double r) {
    if (r <= r0) return ProfileJet{1.0, 0.0, 0.0};
    if (r >= r1) return ProfileJet{0.0, 0.0, 0.0};
    const double t = (r - r0) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double s = 1.0 - (6.0 * t3 * t2 - 15.0 * t2 * t2 + 10.0 * t3);
    const double ds = -30.0 * t2 * (t - 1.0) * (t - 1.0) / h;
    const double dds = -60.0 * t * (t - 1.0) * (2.0 * t - 1.0) / (h * h);
    const double a = ds / r;
    return ProfileJet{s, a, (dds - a) / (r * r)};
  };
  p.compact = r1;
  return p;
}

inline RadialProfile operator*(const RadialProfile& f, const RadialProfile& g) {
  RadialProfile p;
  p.label = f.label + "*" + g.label;
  auto fj = f.jet, gj = g.jet;
  p.jet = [fj, gj](double r) {
    const auto a = fj(r), b = gj(r);
    return ProfileJet{a[0] * b[0], a[1] * b[0] + a[0] * b[1],
                      a[2] * b[0] + a[0] * b[2] + 2.0 * a[1] * b[1]};
  };
  p.degree = f.degree + g.degree;
  p.rate = f.rate + g.rate;
  if (f.compact && g.compact) {
    p.compact = std::min(*f.compact, *g.compact);
  } else if (f.compact || g.compact) {
    p.compact = f.compact ? f.compact : g.compact;
  }
  return p;
}

// --------------------------------------------------------------------------
// n-d fields

/// u(x) = x^β φ(|x|) for a multi-index β (zero-padded to n).
inline FieldFunction monomial_profile_field(const std::string& label, int n,
                                            std::vector<int> beta, const RadialProfile& prof) {
  if (n < 1) throw PreconditionError("field: n must be >= 1");
  beta.resize(static_cast<std::size_t>(n), 0);
  int total = 0;
  for (int b : beta) {
    if (b < 0) throw PreconditionError("field: negative monomial exponent");
    total += b;
  }
  const auto jet = prof.jet;
  auto mono = [beta](Point x, int skip1, int skip2) {
    // ∂-reduced monomial coefficient and value
    double coef = 1.0, v = 1.0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
      int e = beta[i];
      if (static_cast<int>(i) == skip1) coef *= e, --e;
      if (static_cast<int>(i) == skip2) coef *= e, --e;
      if (e < 0 || coef == 0.0) return 0.0;
      v *= std::pow(x[i], e);
    }
    return coef * v;
  };
  auto radius = [](Point x) {
    double s = 0.0;
    for (double xi : x) s += xi * xi;
    return std::sqrt(s);
  };
  FieldFunction f;
  f.label = label;
  f.n = n;
  f.radial = total == 0;
  f.u = [=](Point x) { return mono(x, -1, -1) * jet(radius(x))[0]; };
  f.grad = [=](Point x) {
    const auto j = jet(radius(x));
    const double m = mono(x, -1, -1);
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g[i] = mono(x, i, -1) * j[0] + m * j[1] * x[i];
    return g;
  };
  f.hess = [=](Point x) {
    const auto j = jet(radius(x));
    const double m = mono(x, -1, -1);
    std::vector<double> dm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) dm[i] = mono(x, i, -1);
    std::vector<double> h(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i) {
      for (int k = i; k < n; ++k) {
        double v = mono(x, i, k) * j[0] + (dm[i] * x[k] + dm[k] * x[i]) * j[1] +
                   m * (j[2] * x[i] * x[k] + (i == k ? j[1] : 0.0));
        h[i * n + k] = v;
        h[k * n + i] = v;
      }
    }
    return h;
  };
  if (prof.compact) {
    f.support = SupportHint::compact(*prof.compact);
    f.hypothesis_class = "C2, compact support";
  } else {
    f.support = SupportHint::decaying(prof.degree + total, prof.rate);
    f.hypothesis_class = "C2, Gaussian decay";
  }
  return f;
}

/// e^{-|x - c|²/(2 w²)}.
inline FieldFunction shifted_gaussian_field(const std::string& label, std::vector<double> center,
                                            double width) {
  const int n = static_cast<int>(center.size());
  if (n < 1 || !(width > 0.0)) throw PreconditionError("shifted_gaussian_field: bad parameters");
  const double c = 1.0 / (width * width);
  auto val = [center, c](Point x) {
    double s = 0.0;
    for (std::size_t i = 0; i < center.size(); ++i) s += (x[i] - center[i]) * (x[i] - center[i]);
    return std::exp(-0.5 * c * s);
  };
  FieldFunction f;
  f.label = label;
  f.n = n;
  f.u = val;
  f.grad = [val, center, c](Point x) {
    const double v = val(x);
    std::vector<double> g(center.size());
    for (std::size_t i = 0; i < center.size(); ++i) g[i] = -c * (x[i] - center[i]) * v;
    return g;
  };
  f.hess = [val, center, c, n](Point x) {
    const double v = val(x);
    std::vector<double> h(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i) {
      for (int k = i; k < n; ++k) {
        const double e = c * c * (x[i] - center[i]) * (x[k] - center[k]) * v - (i == k ? c * v : 0.0);
        h[i * n + k] = e;
        h[k * n + i] = e;
      }
    }
    return h;
  };
  double shift = 0.0;
  for (double ci : center) shift = std::max(shift, std::abs(ci));
  // |x - c|² >= |x|²/2 - |c|²
  f.support = SupportHint::decaying(0.0, 0.5 * c);
  f.hypothesis_class = "C2, Gaussian decay";
  f.radial = shift == 0.0;
  return f;
}

inline FieldFunction zero_field(int n) {
  FieldFunction f;
  f.label = "zero";
  f.n = n;
  f.u = [](Point) { return 0.0; };
  f.grad = [n](Point) { return std::vector<double>(static_cast<std::size_t>(n), 0.0); };
  f.hess = [n](Point) { return std::vector<double>(static_cast<std::size_t>(n * n), 0.0); };
  f.support = SupportHint::compact(1.0);
  f.radial = true;
  return f;
}

/// The radial profile φ as a 1-d test function with u' = φ'.
inline RadialTestFunction profile_function(const RadialProfile& prof) {
  RadialTestFunction f;
  f.label = prof.label;
  auto jet = prof.jet;
  f.u = [jet](double r) { return jet(r)[0]; };
  f.du = [jet](double r) { return r * jet(r)[1]; };
  if (prof.compact) {
    f.support = SupportHint::compact(*prof.compact);
  } else {
    f.support = SupportHint::decaying(prof.degree, prof.rate);
  }
  f.hypothesis_class = "smooth";
  return f;
}

// --------------------------------------------------------------------------
// 1-d radial kinds

/// (1 - ((r - center)/width)²)^degree on |r - center| < width, 0 elsewhere.
inline RadialTestFunction bump_function(double center, double width, int degree) {
  if (!(width > 0.0) || degree < 1) throw PreconditionError("bump: need width > 0, degree >= 1");
  RadialTestFunction f;
  f.label = "bump(" + format_double(center) + "," + format_double(width) + "," +
            std::to_string(degree) + ")";
  f.u = [=](double r) {
    const double t = (r - center) / width;
    return std::abs(t) >= 1.0 ? 0.0 : std::pow(1.0 - t * t, degree);
  };
  f.du = [=](double r) {
    const double t = (r - center) / width;
    if (std::abs(t) >= 1.0) return 0.0;
    return -2.0 * degree * t / width * std::pow(1.0 - t * t, degree - 1);
  };
  for (double b : {center - width, center + width}) {
    if (b > 0.0) f.breakpoints.push_back(b);
  }
  f.support = SupportHint::compact(center + width);
  f.hypothesis_class = degree >= 2 ? "C1, compact support" : "continuous, piecewise C1, compact support";
  return f;
}

/// (Σ a_k r^k) e^{-rate r²/2}.
inline RadialTestFunction poly_gauss_function(std::vector<double> coefficients, double rate) {
  if (coefficients.empty()) throw PreconditionError("poly_gauss: empty coefficient list");
  RadialTestFunction f;
  std::string lbl = "poly_gauss([";
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    lbl += (i ? "," : "") + format_double(coefficients[i]);
  }
  f.label = lbl + "]," + format_double(rate) + ")";
  auto poly = [coefficients](double r) {
    double v = 0.0;
    for (std::size_t k = coefficients.size(); k-- > 0;) v = v * r + coefficients[k];
    return v;
  };
  auto dpoly = [coefficients](double r) {
    double v = 0.0;
    for (std::size_t k = coefficients.size(); k-- > 1;) v = v * r + k * coefficients[k];
    return v;
  };
  f.u = [=](double r) { return poly(r) * std::exp(-0.5 * rate * r * r); };
  f.du = [=](double r) { return (dpoly(r) - rate * r * poly(r)) * std::exp(-0.5 * rate * r * r); };
  f.support = SupportHint::decaying(static_cast<double>(coefficients.size() - 1) + 1.0, rate);
  f.hypothesis_class = rate > 0.0 ? "smooth, Gaussian decay" : "smooth, sub-Gaussian growth";
  return f;
}

inline RadialTestFunction zero_function() {
  RadialTestFunction f;
  f.label = "zero";
  f.u = [](double) { return 0.0; };
  f.du = [](double) { return 0.0; };
  f.support = SupportHint::compact(1.0);
  f.hypothesis_class = "zero";
  return f;
}

// --------------------------------------------------------------------------
// Default field corpus

struct FieldSpec {
  std::string label;
  int min_dim = 1;
  std::function<FieldFunction(int)> make;
};

inline std::vector<FieldSpec> default_field_specs() {
  std::vector<FieldSpec> s;
  auto mp = [](std::string label, std::vector<int> beta, std::function<RadialProfile()> prof,
               int min_dim = 1) {
    return FieldSpec{label, min_dim, [label, beta, prof](int n) {
                       return monomial_profile_field(label, n, beta, prof());
                     }};
  };
  s.push_back(mp("gauss_quarter", {}, [] { return gaussian_profile(0.5); }));
  s.push_back(mp("gauss_unit", {}, [] { return gaussian_profile(2.0); }));
  s.push_back(mp("r2_gauss", {}, [] { return square_profile() * gaussian_profile(0.5); }));
  s.push_back(mp("bump_cutoff", {}, [] { return cutoff_profile(1.0, 3.0); }));
  s.push_back(mp("x1_gauss", {1}, [] { return gaussian_profile(0.5) * cutoff_profile(8.0, 10.0); }));
  s.push_back(mp("x1_cutoff", {1}, [] { return cutoff_profile(6.0, 10.0); }));
  s.push_back(mp("x1sq_gauss", {2}, [] { return gaussian_profile(0.5); }));
  s.push_back(mp("x1cube_gauss", {3}, [] { return gaussian_profile(1.0); }));
  s.push_back(mp("x1_bump", {1}, [] { return cutoff_profile(1.0, 2.5); }));
  s.push_back(FieldSpec{"shifted_gauss", 1, [](int n) {
                          std::vector<double> c(static_cast<std::size_t>(n), 0.0);
                          c[0] = 0.5;
                          return shifted_gaussian_field("shifted_gauss", c, 1.0);
                        }});
  s.push_back(mp("x1x2_gauss", {1, 1}, [] { return gaussian_profile(0.5); }, 2));
  return s;
}

inline std::vector<FieldFunction> default_field_corpus(int n) {
  std::vector<FieldFunction> out;
  for (const auto& spec : default_field_specs()) {
    if (n >= spec.min_dim) out.push_back(spec.make(n));
  }
  return out;
}

}  // namespace orlicz
