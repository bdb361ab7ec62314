#pragma once

// Integration against the radial Gaussian measure dμ_n(r) = r^{n-1} e^{-r²/2} dr
// on [0, ∞) and against the Gaussian measure on R^n by spherical reduction.
//
// The 1-d engine is a globally adaptive Gauss-Kronrod (7,15) scheme: the
// panel with the largest |K15 - G7| is bisected until the summed estimate
// meets max(abs_tol, rel_tol |I|). Caller-supplied breakpoints are mandatory
// panel boundaries. Semi-infinite ranges are truncated at a radius derived
// from a declared polynomial-times-Gaussian envelope, and the neglected tail
// is bounded from the integrand value at the cut.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/hash.hpp"
#include "orlicz/special.hpp"

namespace orlicz {

/// A point of R^n.
using Point = std::span<const double>;

/// How the Gaussian measure on R^n is scaled. Reports always record which.
enum class Normalization {
  unnormalized,  // e^{-|x|²/2} dx
  probability,   // (2π)^{-n/2} e^{-|x|²/2} dx
};

inline const char* to_string(Normalization n) {
  return n == Normalization::unnormalized ? "unnormalized" : "probability";
}

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  /// Empty means automatic truncation; otherwise integrate on [0, R] only.
  std::optional<double> fixed_radius;
  int sphere_nodes = 32;
  std::uint64_t seed = 20240611;
  Normalization normalization = Normalization::unnormalized;
  int max_panels = 20000;

  void validate() const {
    if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) {
      throw PreconditionError("QuadratureSpec: rel_tol must lie in (0, 1e-2]");
    }
    if (!(abs_tol > 0.0)) throw PreconditionError("QuadratureSpec: abs_tol must be > 0");
    if (sphere_nodes < 1) throw PreconditionError("QuadratureSpec: sphere_nodes must be >= 1");
    if (fixed_radius && !(*fixed_radius > 0.0)) {
      throw PreconditionError("QuadratureSpec: fixed radius must be > 0");
    }
  }

  std::string describe() const {
    return "rel=" + format_double(rel_tol) + ";abs=" + format_double(abs_tol) + ";R=" +
           (fixed_radius ? format_double(*fixed_radius) : std::string("auto")) +
           ";sphere=" + std::to_string(sphere_nodes) + ";seed=" + std::to_string(seed) +
           ";norm=" + to_string(normalization);
  }
};

/// Integrand bound |f(r)| r^{n-1} e^{-r²/2} ≲ r^{n-1+degree} e^{-rate r²/2},
/// or exact support in [0, radius] when `compact` is set.
struct RadialEnvelope {
  double degree = 0.0;
  double rate = 1.0;
  std::optional<double> compact;
};

struct QuadResult {
  double value = 0.0;
  double err_est = 0.0;
  double radius = 0.0;
  int panels = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

template <class F>
double checked_eval(const F& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    throw EvaluationError("integrand is " + format_double(v) + " at x=" + format_double(x), x);
  }
  return v;
}

template <class F>
Panel gauss_kronrod15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = checked_eval(f, c);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = checked_eval(f, c - dx);
    const double f2 = checked_eval(f, c + dx);
    kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  return {a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

}  // namespace detail

/// Adaptive integral of f over [a, b] with mandatory breakpoints.
template <class F>
QuadResult integrate_interval(const F& f, double a, double b, double rel_tol, double abs_tol,
                              std::span<const double> breakpoints = {}, int max_panels = 20000,
                              int initial_panels = 8) {
  QuadResult out;
  out.radius = b;
  if (!(b > a)) return out;
  std::vector<double> cuts{a, b};
  for (double x : breakpoints) {
    if (x > a && x < b) cuts.push_back(x);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<detail::Panel> heap;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double w = (cuts[i + 1] - cuts[i]) / initial_panels;
    for (int k = 0; k < initial_panels; ++k) {
      const double lo = cuts[i] + k * w;
      const double hi = k + 1 == initial_panels ? cuts[i + 1] : lo + w;
      heap.push_back(detail::gauss_kronrod15(f, lo, hi));
    }
  }
  std::make_heap(heap.begin(), heap.end());
  std::vector<detail::Panel> frozen;  // panels too narrow to split further

  auto totals = [&] {
    double v = 0.0, e = 0.0;
    for (const auto& p : heap) v += p.value, e += p.err;
    for (const auto& p : frozen) v += p.value, e += p.err;
    return std::pair{v, e};
  };

  auto [value, err] = totals();
  int panels = static_cast<int>(heap.size());
  while (err > std::max(abs_tol, rel_tol * std::abs(value)) && !heap.empty()) {
    if (panels >= max_panels) {
      throw AccuracyError("integrate_interval: panel budget exhausted on [" + format_double(a) +
                          "," + format_double(b) + "], err=" + format_double(err));
    }
    std::pop_heap(heap.begin(), heap.end());
    const detail::Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        worst.b - worst.a < 1e-13 * std::max(1.0, std::abs(mid))) {
      frozen.push_back(worst);
      continue;
    }
    const auto left = detail::gauss_kronrod15(f, worst.a, mid);
    const auto right = detail::gauss_kronrod15(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end());
    ++panels;
    if (panels % 64 == 0) std::tie(value, err) = totals();  // resync running sums
  }
  std::tie(value, err) = totals();
  out.value = value;
  out.err_est = err;
  out.panels = panels;
  return out;
}

/// ∫_a^∞ f(x) dx via x = a + t/(1-t).
template <class F>
QuadResult integrate_to_infinity(const F& f, double a, double rel_tol, double abs_tol,
                                 std::span<const double> breakpoints = {},
                                 int max_panels = 20000) {
  auto g = [&](double t) {
    const double s = 1.0 - t;
    const double x = a + t / s;
    const double v = f(x);
    if (v == 0.0) return 0.0;
    return v / (s * s);
  };
  std::vector<double> tb;
  for (double x : breakpoints) {
    if (x > a) tb.push_back((x - a) / (1.0 + x - a));
  }
  auto res = integrate_interval(g, 0.0, 1.0, rel_tol, abs_tol, tb, max_panels);
  res.radius = std::numeric_limits<double>::infinity();
  return res;
}

/// Smallest R >= 1 with e^{-rate R²/2} R^{power} <= threshold.
inline double truncation_radius(double power, double rate, double threshold) {
  if (!(rate > 0.0)) throw PreconditionError("truncation_radius: Gaussian rate must be > 0");
  const double target = -std::log(threshold);
  double R = 1.0;
  for (int i = 0; i < 100; ++i) {
    const double next = std::sqrt(2.0 * std::max(0.0, target + std::max(0.0, power) * std::log(R)) / rate);
    if (std::abs(next - R) < 1e-12 * R) break;
    R = std::max(1.0, next);
  }
  return std::max(R, 1.0);
}

namespace detail {

inline double tail_bound(double g_at_R, double R, double power, double rate) {
  const double g = std::abs(g_at_R);
  if (g == 0.0) return 0.0;
  // ∫_R^∞ x^m e^{-c x²/2} dx <= g(R) / (cR - m/R) once cR² > m.
  const double slope = rate * R - std::max(0.0, power) / R;
  if (slope > 0.5 / R) return g / slope;
  return g * R;
}

}  // namespace detail

/// ∫₀^R h(r) dr where h already includes the weight r^{n-1} e^{-r²/2}.
/// The truncation policy and tail bound follow `env` (degree counts the
/// factors beyond r^{n-1}).
template <class H>
QuadResult integrate_radial_weighted(const H& h, int n, const QuadratureSpec& spec,
                                     const RadialEnvelope& env,
                                     std::span<const double> breakpoints = {}) {
  spec.validate();
  if (n < 1) throw PreconditionError("integrate_radial: dimension must be >= 1");
  if (env.compact) {
    const double R = spec.fixed_radius ? std::min(*spec.fixed_radius, *env.compact) : *env.compact;
    auto res = integrate_interval(h, 0.0, R, spec.rel_tol, spec.abs_tol, breakpoints,
                                  spec.max_panels);
    res.radius = R;
    return res;
  }
  const double power = n - 1 + env.degree;
  double R = spec.fixed_radius ? *spec.fixed_radius
                               : truncation_radius(power, env.rate, spec.abs_tol);
  QuadResult res = integrate_interval(h, 0.0, R, spec.rel_tol, spec.abs_tol, breakpoints,
                                      spec.max_panels);
  for (int attempt = 0;; ++attempt) {
    const double tail = detail::tail_bound(detail::checked_eval(h, R), R, power, env.rate);
    const double budget = std::max(spec.abs_tol, spec.rel_tol * std::abs(res.value));
    if (tail <= budget) {
      res.err_est += tail;
      res.radius = R;
      return res;
    }
    if (spec.fixed_radius || attempt >= 40) {
      throw AccuracyError("integrate_radial: truncation tail " + format_double(tail) +
                          " exceeds tolerance at R=" + format_double(R));
    }
    const double next = R * 1.25;
    const auto extra = integrate_interval(h, R, next, spec.rel_tol, spec.abs_tol, breakpoints,
                                          spec.max_panels);
    res.value += extra.value;
    res.err_est += extra.err_est;
    res.panels += extra.panels;
    R = next;
  }
}

/// ∫₀^∞ f(r) dμ_n(r).
template <class F>
QuadResult integrate_radial(const F& f, int n, const QuadratureSpec& spec,
                            const RadialEnvelope& env = {},
                            std::span<const double> breakpoints = {}) {
  auto h = [&](double r) {
    const double w = (n == 1 ? 1.0 : std::pow(r, n - 1)) * std::exp(-0.5 * r * r);
    if (w == 0.0) return 0.0;
    return detail::checked_eval(f, r) * w;
  };
  return integrate_radial_weighted(h, n, spec, env, breakpoints);
}

// --------------------------------------------------------------------------
// Gaussian measure on R^n

/// Reproducible direction set on S^{n-1}, closed under y -> -y.
///  n = 1: {+1, -1} (exact).
///  n = 2: equispaced angles with a seeded rotation (even count).
///  n >= 3: seeded Gaussian directions, each paired with its antipode.
inline std::vector<std::vector<double>> sphere_directions(int n, int nodes, std::uint64_t seed) {
  if (n < 1) throw PreconditionError("sphere_directions: n must be >= 1");
  if (nodes < 1) throw PreconditionError("sphere_directions: nodes must be >= 1");
  std::vector<std::vector<double>> dirs;
  if (n == 1) return {{1.0}, {-1.0}};
  std::mt19937_64 rng(seed);
  if (n == 2) {
    const int count = std::max(2, nodes + (nodes % 2));
    std::uniform_real_distribution<double> unif(0.0, 2.0 * std::numbers::pi / count);
    const double phase = unif(rng);
    for (int k = 0; k < count; ++k) {
      const double phi = phase + 2.0 * std::numbers::pi * k / count;
      dirs.push_back({std::cos(phi), std::sin(phi)});
    }
    return dirs;
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  const int pairs = std::max(1, (nodes + 1) / 2);
  for (int k = 0; k < pairs; ++k) {
    std::vector<double> y(static_cast<std::size_t>(n));
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (auto& v : y) {
        v = normal(rng);
        norm2 += v * v;
      }
    } while (norm2 < 1e-20);
    const double inv = 1.0 / std::sqrt(norm2);
    std::vector<double> neg(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] *= inv;
      neg[i] = -y[i];
    }
    dirs.push_back(std::move(y));
    dirs.push_back(std::move(neg));
  }
  return dirs;
}

/// Total mass factor turning a direction-average of radial μ_n integrals into
/// an integral over R^n under the chosen normalization.
inline double gaussian_mass_factor(int n, Normalization norm) {
  const double area = sphere_area(n);
  if (norm == Normalization::probability) {
    return area * std::pow(2.0 * std::numbers::pi, -0.5 * n);
  }
  return area;
}

struct NdResult {
  double value = 0.0;
  double err_est = 0.0;
  double angular_se = 0.0;
  int directions = 0;
  bool accuracy_warning = false;
};

/// Combines per-direction radial integrals into an R^n Gaussian integral.
inline NdResult combine_directional(std::span<const QuadResult> radial, int n,
                                    const QuadratureSpec& spec) {
  const std::size_t m = radial.size();
  double mean = 0.0, quad_err = 0.0;
  for (const auto& r : radial) {
    mean += r.value;
    quad_err += r.err_est;
  }
  mean /= m;
  quad_err /= m;
  double se = 0.0;
  if (n == 2 && m >= 4) {
    double half = 0.0;
    for (std::size_t i = 0; i < m; i += 2) half += radial[i].value;
    half /= static_cast<double>((m + 1) / 2);
    se = std::abs(half - mean);
  } else if (n >= 3 && m >= 4) {
    const std::size_t pairs = m / 2;
    std::vector<double> pm(pairs);
    for (std::size_t k = 0; k < pairs; ++k) {
      pm[k] = 0.5 * (radial[2 * k].value + radial[2 * k + 1].value);
    }
    double var = 0.0;
    for (double v : pm) var += (v - mean) * (v - mean);
    var /= static_cast<double>(pairs - 1);
    se = std::sqrt(var / static_cast<double>(pairs));
  }
  const double mass = gaussian_mass_factor(n, spec.normalization);
  NdResult out;
  out.value = mass * mean;
  out.angular_se = mass * se;
  out.err_est = mass * (quad_err + se);
  out.directions = static_cast<int>(m);
  out.accuracy_warning = out.angular_se > spec.rel_tol * std::abs(out.value) &&
                         out.angular_se > spec.abs_tol;
  return out;
}

/// ∫_{R^n} g(x) dγ_n(x), with γ_n normalized per spec.normalization.
/// g receives points as std::span<const double> of length n.
template <class G>
NdResult integrate_gaussian_nd(const G& g, int n, const QuadratureSpec& spec,
                               const RadialEnvelope& env = {}) {
  spec.validate();
  const auto dirs = sphere_directions(n, spec.sphere_nodes, spec.seed);
  std::vector<QuadResult> radial;
  radial.reserve(dirs.size());
  std::vector<double> x(static_cast<std::size_t>(n));
  for (const auto& y : dirs) {
    auto profile = [&](double r) {
      for (int i = 0; i < n; ++i) x[i] = r * y[i];
      return g(std::span<const double>(x));
    };
    radial.push_back(integrate_radial(profile, n, spec, env));
  }
  return combine_directional(radial, n, spec);
}

}  // namespace orlicz
