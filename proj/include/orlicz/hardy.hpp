#pragma once

// Hardy-type inequalities for the radial Gaussian measure μ_n and for γ_n on
// R^n, in modular and Luxemburg-norm form.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

#include "orlicz/errors.hpp"
#include "orlicz/functionals.hpp"
#include "orlicz/nfunc.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/report.hpp"

namespace orlicz {

inline constexpr double kEulerE = std::numbers::e;

namespace detail {

inline void require_valid(const ModularTriple& t, const char* who) {
  if (!t.valid()) {
    throw PreconditionError(std::string(who) + ": modular triple is not finite");
  }
}

/// (D/2 G^{1/D} + sqrt(D²/4 G^{2/D} + (D+n-2) L^{2/D}))^D
inline double term2_bound(double L, double G, double D, double n) {
  const double g = std::pow(G, 1.0 / D);
  const double l2 = std::pow(L, 2.0 / D);
  const double inner = 0.5 * D * g + std::sqrt(0.25 * D * D * g * g + (D + n - 2.0) * l2);
  return std::pow(inner, D);
}

inline double term2_error(const ModularTriple& t, double D, double n) {
  const double base = term2_bound(t.L, t.G, D, n);
  return std::abs(term2_bound(t.L + t.err_L, t.G + t.err_G, D, n) - base);
}

}  // namespace detail

// --------------------------------------------------------------------------
// Alternative form (d_M >= 2, D_M > 2)

struct AlternativeResult {
  CheckReport disjunction;
  std::optional<CheckReport> term2_only;
  /// "term1", "term2", "both" or "neither".
  std::string branch;
};

/// K <= (D/d)^{D/(D-2)} L  or  K <= term2(L, G); for D + n >= e + 2 the
/// term2 bound alone is also checked.
inline AlternativeResult check_alternative(const ModularTriple& t, double d, double D, int n,
                                           const std::string& subject = {}) {
  if (!(d >= 2.0 && D > 2.0 && D >= d)) {
    throw PreconditionError("check_alternative: need d_M >= 2, D_M > 2, D_M >= d_M");
  }
  if (n < 1) throw PreconditionError("check_alternative: n must be >= 1");
  detail::require_valid(t, "check_alternative");
  const double c1 = std::pow(D / d, D / (D - 2.0));
  const double rhs1 = c1 * t.L;
  const double rhs2 = detail::term2_bound(t.L, t.G, D, n);
  const double err1 = t.err_K + c1 * t.err_L;
  const double err2 = t.err_K + detail::term2_error(t, D, n);

  const auto r1 = make_report(InequalityId::term1, subject, t.K, rhs1, err1);
  const auto r2 = make_report(InequalityId::term2, subject, t.K, rhs2, err2);
  const bool h1 = r1.verdict == Verdict::holds;
  const bool h2 = r2.verdict == Verdict::holds;

  AlternativeResult out;
  out.branch = h1 && h2 ? "both" : h1 ? "term1" : h2 ? "term2" : "neither";
  const bool use1 = rhs1 - t.K >= rhs2 - t.K;
  out.disjunction = make_report(InequalityId::alternative, subject, t.K, std::max(rhs1, rhs2),
                                use1 ? err1 : err2,
                                {{"d_M", d}, {"D_M", D}, {"n", n}, {"term1_coefficient", c1}});
  out.disjunction.terms = {{"term1_rhs", rhs1}, {"term2_rhs", rhs2}};
  out.disjunction.note = "branch=" + out.branch;
  if (D + n >= kEulerE + 2.0) {
    auto only = r2;
    only.constants_used = {{"D_M", D}, {"n", n}};
    out.term2_only = only;
  }
  return out;
}

// --------------------------------------------------------------------------
// Linear form

struct LinearConstants {
  double C1;
  double C2;
};

/// C1 = 2^{D-1} (D+n-2)^{D/2}, C2 = 2^{D-1} D^D, valid for D + n >= e + 2.
inline LinearConstants linear_constants(double D, double d, int n) {
  if (!(D > 2.0 && d >= 2.0)) throw PreconditionError("linear_constants: need d_M >= 2, D_M > 2");
  if (D + n < kEulerE + 2.0) {
    throw OutOfRegimeError("linear_constants: D_M + n = " + format_double(D + n) +
                           " < e + 2; use the beta/gamma trade-off instead");
  }
  const double scale = std::pow(2.0, D - 1.0);
  return {scale * std::pow(D + n - 2.0, 0.5 * D), scale * std::pow(D, D)};
}

/// K <= C1 L + C2 G.
inline CheckReport check_linear(const ModularTriple& t, double C1, double C2,
                                const std::string& subject = {},
                                InequalityId id = InequalityId::liniowe) {
  detail::require_valid(t, "check_linear");
  const double rhs = C1 * t.L + C2 * t.G;
  return make_report(id, subject, t.K, rhs, t.err_K + C1 * t.err_L + C2 * t.err_G,
                     {{"C1", C1}, {"C2", C2}});
}

/// Quadratic case: (1/4) K <= (n/2) L + G, i.e. K <= 2n L + 4 G.
inline CheckReport check_p2_exact(const ModularTriple& t, int n, const std::string& subject = {}) {
  detail::require_valid(t, "check_p2_exact");
  const double lhs = 0.25 * t.K;
  const double rhs = 0.5 * n * t.L + t.G;
  auto r = make_report(InequalityId::p2_exact, subject, lhs, rhs,
                       0.25 * t.err_K + 0.5 * n * t.err_L + t.err_G,
                       {{"C1", 2.0 * n}, {"C2", 4.0}, {"n", n}});
  if (t.L > 0.0) r.terms = {{"K_minus_4G_over_L", (t.K - 4.0 * t.G) / t.L}};
  return r;
}

// --------------------------------------------------------------------------
// beta / gamma trade-off

struct BetaGamma {
  double beta;
  double gamma;
  double beta_argmax;
  double gamma_argmax;
};

namespace detail {

/// sup_{w>0} phi(w): coarse log scan on [1e-8, 1e8], golden section in
/// log w around the best node, compared against the w -> 0+ limit.
template <class Phi>
std::pair<double, double> bracketed_sup(const Phi& phi, double limit_at_zero) {
  const int nodes = 4001;
  const double lo = std::log(1e-8), hi = std::log(1e8);
  double best = -std::numeric_limits<double>::infinity();
  int best_i = 0;
  for (int i = 0; i < nodes; ++i) {
    const double v = phi(std::exp(lo + (hi - lo) * i / (nodes - 1)));
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  double a = lo + (hi - lo) * std::max(0, best_i - 1) / (nodes - 1);
  double b = lo + (hi - lo) * std::min(nodes - 1, best_i + 1) / (nodes - 1);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a), e = a + invphi * (b - a);
  double fc = phi(std::exp(c)), fe = phi(std::exp(e));
  for (int it = 0; it < 200 && b - a > 1e-14; ++it) {
    if (fc > fe) {
      b = e;
      e = c;
      fe = fc;
      c = b - invphi * (b - a);
      fc = phi(std::exp(c));
    } else {
      a = c;
      c = e;
      fc = fe;
      e = a + invphi * (b - a);
      fe = phi(std::exp(e));
    }
  }
  double arg = std::exp(0.5 * (a + b));
  double val = phi(arg);
  if (best > val) {
    val = best;
    arg = std::exp(lo + (hi - lo) * best_i / (nodes - 1));
  }
  if (limit_at_zero > val) return {limit_at_zero, 0.0};
  return {val, arg};
}

}  // namespace detail

/// beta(rho) = sup_w (w/2 + sqrt(w²/4 + 1))^D - rho w^D,
/// gamma(rho) = sup_w (1/2 + sqrt(1/4 + w²))^D - rho w^D.
inline BetaGamma beta_gamma(double rho, double D) {
  if (!(rho > 1.0)) {
    throw PreconditionError("beta_gamma: rho must be > 1 (both suprema blow up as rho -> 1+)");
  }
  if (!(D > 2.0)) throw PreconditionError("beta_gamma: D_M must be > 2");
  auto beta_fn = [&](double w) {
    return std::pow(0.5 * w + std::sqrt(0.25 * w * w + 1.0), D) - rho * std::pow(w, D);
  };
  auto gamma_fn = [&](double w) {
    return std::pow(0.5 + std::sqrt(0.25 + w * w), D) - rho * std::pow(w, D);
  };
  const auto [b, bw] = detail::bracketed_sup(beta_fn, 1.0);
  const auto [g, gw] = detail::bracketed_sup(gamma_fn, 1.0);
  return {b, g, bw, gw};
}

/// K <= beta(rho) (D+n-2)^{D/2} L + rho D^D G  and
/// K <= rho (D+n-2)^{D/2} L + gamma(rho) D^D G.
inline std::pair<CheckReport, CheckReport> tradeoff_check(const ModularTriple& t, double rho,
                                                          double D, int n,
                                                          const std::string& subject = {}) {
  detail::require_valid(t, "tradeoff_check");
  const auto bg = beta_gamma(rho, D);
  const double a = std::pow(D + n - 2.0, 0.5 * D);
  const double b = std::pow(D, D);
  auto rb = check_linear(t, bg.beta * a, rho * b, subject, InequalityId::tradeoff_beta);
  auto rg = check_linear(t, rho * a, bg.gamma * b, subject, InequalityId::tradeoff_gamma);
  for (auto* r : {&rb, &rg}) {
    r->constants_used["rho"] = rho;
    r->constants_used["beta"] = bg.beta;
    r->constants_used["gamma"] = bg.gamma;
  }
  return {rb, rg};
}

// --------------------------------------------------------------------------
// Convex case (only doubling + convexity)

struct ConvexConstants {
  double C1;
  double C2;
  double eps;
  double kappa;
};

inline const char* convex_constants_formula() {
  return "eps=1/(4D), kappa=2 sqrt(D+n), A=2^D e^{2 kappa^2} kappa^{D+n-2}; "
         "C1=2(kappa^D + A), C2=2(A + D (4D)^D)";
}

/// Explicit constants for the convex-case inequality, from the absorption
/// argument with eps = 1/(4D) and kappa = 2 sqrt(D + n): both K-terms on the
/// right carry weight 1/4, so K/2 <= (kappa^D + A) L + (A + D eps^{-D}) G.
inline ConvexConstants convex_case_constants(double D, int n) {
  if (!(D >= 1.0)) throw PreconditionError("convex_case_constants: D_M must be >= 1");
  if (n < 1) throw PreconditionError("convex_case_constants: n must be >= 1");
  const double eps = 1.0 / (4.0 * D);
  const double kappa = 2.0 * std::sqrt(D + n);
  const double A = std::exp(D * std::numbers::ln2 + 2.0 * kappa * kappa +
                            (D + n - 2.0) * std::log(kappa));
  const double C1 = 2.0 * (std::pow(kappa, D) + A);
  const double C2 = 2.0 * (A + D * std::pow(eps, -D));
  return {C1, C2, eps, kappa};
}

inline std::map<std::string, double> convex_constants_map(const ConvexConstants& c, double D,
                                                          int n) {
  return {{"C1", c.C1}, {"C2", c.C2}, {"eps", c.eps}, {"kappa", c.kappa}, {"D_M", D}, {"n", n}};
}

inline CheckReport check_convex_case(const ModularTriple& t, double D, int n,
                                     const std::string& subject = {}) {
  const auto c = convex_case_constants(D, n);
  auto r = check_linear(t, c.C1, c.C2, subject, InequalityId::ww);
  r.constants_used = convex_constants_map(c, D, n);
  r.note = convex_constants_formula();
  return r;
}

/// Same, after verifying that nf is convex and increasing on `grid`.
inline CheckReport check_convex_case(const ModularTriple& t, const NFunction& nf, int n,
                                     const std::string& subject = {},
                                     const GridSpec& grid = {1e-4, 1e4, 200, GridScale::log}) {
  if (!check_convex_increasing(nf, grid.nodes())) {
    throw PreconditionError(nf.label + ": convex case needs a convex increasing M");
  }
  return check_convex_case(t, nf.upper_exponent(), n, subject);
}

/// ‖r u‖ <= C (‖u‖ + ‖u'‖) in L^M(μ_n) with C = C1 + C2 + 1.
inline CheckReport check_norm_form_radial(const RadialTestFunction& f, const NFunction& nf, int n,
                                          const QuadratureSpec& spec = {},
                                          const std::string& subject = {}) {
  const double D = nf.upper_exponent();
  const auto c = convex_case_constants(D, n);
  const double C = c.C1 + c.C2 + 1.0;
  std::span<const double> br(f.breakpoints);
  SupportHint hr = f.support, hu = f.support, hd = f.support;
  if (!hr.is_compact()) hr.degree += 1.0, hd.degree += 1.0;
  const double nu = luxemburg_norm_radial(f.u, nf, n, spec, hu, br);
  const double nd = luxemburg_norm_radial(f.du, nf, n, spec, hd, br);
  auto constants = convex_constants_map(c, D, n);
  constants["C"] = C;
  if (nu + nd == 0.0) {
    auto r = trivial_report(InequalityId::www, subject, "u = 0: both sides vanish");
    r.constants_used = constants;
    return r;
  }
  const double nr = luxemburg_norm_radial([&](double r) { return r * f.u(r); }, nf, n, spec, hr, br);
  auto r = make_report(InequalityId::www, subject, nr, C * (nu + nd), 1e-8 * C * (nu + nd), constants);
  r.terms = {{"norm_ru", nr}, {"norm_u", nu}, {"norm_du", nd}, {"ratio", nr / (nu + nd)}};
  return r;
}

// --------------------------------------------------------------------------
// n-dimensional forms

enum class NdForm { hn1, hn11, wwww };

inline const char* to_string(NdForm f) {
  switch (f) {
    case NdForm::hn1: return "hn1";
    case NdForm::hn11: return "hn11";
    case NdForm::wwww: return "wwww";
  }
  return "unknown";
}

inline CheckReport check_nd(const FieldFunction& f, const NFunction& nf, NdForm form,
                            const QuadratureSpec& spec = {}, const std::string& subject = {}) {
  if (!f.grad) throw PreconditionError(f.label + ": check_nd needs a gradient");
  const int n = f.n;
  const double D = nf.upper_exponent();
  if (form == NdForm::wwww) {
    const double d = nf.lower_exponent();
    if (!(d >= 2.0)) throw HypothesisError(nf.label + ": wwww needs d_M >= 2");
    if (!(D > std::max(2.0, kEulerE + 2.0 - n))) {
      throw HypothesisError(nf.label + ": wwww needs D_M > max(2, e + 2 - n)");
    }
    const auto t = modular_triple_nd(f, nf, spec);
    detail::require_valid(t, "check_nd");
    auto r = make_report(InequalityId::wwww, subject, t.K, detail::term2_bound(t.L, t.G, D, n),
                         t.err_K + detail::term2_error(t, D, n),
                         {{"d_M", d}, {"D_M", D}, {"n", n}});
    r.terms = {{"K", t.K}, {"L", t.L}, {"G", t.G}};
    r.note = t.note;
    return r;
  }
  if (!check_convex_increasing(nf, GridSpec{1e-4, 1e4, 200, GridScale::log}.nodes())) {
    throw HypothesisError(nf.label + ": " + to_string(form) + " needs a convex increasing M");
  }
  const auto c = convex_case_constants(D, n);
  if (form == NdForm::hn1) {
    const auto t = modular_triple_nd(f, nf, spec);
    auto r = check_linear(t, c.C1, c.C2, subject, InequalityId::hn1);
    r.constants_used = convex_constants_map(c, D, n);
    r.terms = {{"K", t.K}, {"L", t.L}, {"G", t.G}};
    r.note = t.note;
    return r;
  }
  const double C = c.C1 + c.C2 + 1.0;
  auto constants = convex_constants_map(c, D, n);
  constants["C"] = C;
  const auto envU = field_envelope(f.support, nf, 0.0);
  const auto envX = field_envelope(f.support, nf, 1.0);
  const double nu = luxemburg_norm_nd(f.u, nf, n, spec, envU);
  const double ng = luxemburg_norm_nd([&](Point x) { return euclidean_norm(f.grad(x)); }, nf, n,
                                      spec, envX);
  if (nu + ng == 0.0) {
    auto r = trivial_report(InequalityId::hn11, subject, "u = 0: both sides vanish");
    r.constants_used = constants;
    return r;
  }
  const double nx = luxemburg_norm_nd(
      [&](Point x) { return euclidean_norm(x) * std::abs(f.u(x)); }, nf, n, spec, envX);
  auto r = make_report(InequalityId::hn11, subject, nx, C * (nu + ng), 1e-8 * C * (nu + ng),
                       constants);
  r.terms = {{"norm_xu", nx}, {"norm_u", nu}, {"norm_grad", ng}};
  return r;
}

}  // namespace orlicz
