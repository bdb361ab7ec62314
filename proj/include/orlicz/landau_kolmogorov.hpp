#pragma once

// Gaussian Landau–Kolmogorov inequalities on R^n:
//
//   ∫ M(|∇u|) dγ_n <= C1 ∫ M(θ|∇²u|_HS) dγ_n + C2 ∫ M(|u|/θ) dγ_n,   θ ∈ (0,1],
//   ‖∇u‖ <= C1 sqrt(‖∇²u‖ ‖u‖) + C2 ‖u‖.
//
// No explicit constants are available, so they are fitted over a declared
// corpus and grid and reported with the member that binds them.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/functionals.hpp"
#include "orlicz/hardy.hpp"
#include "orlicz/nfunc.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/report.hpp"

namespace orlicz {

namespace detail {

inline void require_lk_hypotheses(const FieldFunction& u, const NFunction& nf) {
  if (!u.grad || !u.hess) {
    throw PreconditionError(u.label + ": Landau-Kolmogorov checks need gradient and Hessian");
  }
  const double d = nf.lower_exponent();
  if (!(d >= 2.0)) {
    throw HypothesisError(nf.label + ": M(r)/r^2 is not non-decreasing (d_M = " +
                          format_double(d) + " < 2)");
  }
}

inline double hessian_hs(const FieldFunction& u, Point x) {
  return hilbert_schmidt_norm(u.hess(x), u.n);
}

}  // namespace detail

/// The three modulars at a given θ.
struct LKModulars {
  double G = 0.0;  // ∫ M(|∇u|)
  double H = 0.0;  // ∫ M(θ |∇²u|)
  double U = 0.0;  // ∫ M(|u|/θ)
  double err_G = 0.0;
  double err_H = 0.0;
  double err_U = 0.0;
  double theta = 1.0;
  bool angular_warning = false;
};

inline LKModulars lk_modulars(const FieldFunction& u, const NFunction& nf, double theta,
                              const QuadratureSpec& spec = {}) {
  detail::require_lk_hypotheses(u, nf);
  if (!(theta > 0.0 && theta <= 1.0)) throw PreconditionError("lk: theta must lie in (0, 1]");
  const int n = u.n;
  auto g = modular_nd([&](Point x) { return euclidean_norm(u.grad(x)); }, nf, n, spec,
                      field_envelope(u.support, nf, 1.0));
  auto h = modular_nd([&](Point x) { return theta * detail::hessian_hs(u, x); }, nf, n, spec,
                      field_envelope(u.support, nf, 2.0));
  auto v = modular_nd([&](Point x) { return std::abs(u.u(x)) / theta; }, nf, n, spec,
                      field_envelope(u.support, nf, 0.0));
  LKModulars m;
  m.G = g.value;
  m.H = h.value;
  m.U = v.value;
  m.err_G = g.err_est;
  m.err_H = h.err_est;
  m.err_U = v.err_est;
  m.theta = theta;
  m.angular_warning = g.accuracy_warning || h.accuracy_warning || v.accuracy_warning;
  return m;
}

inline LKReport lk_modular_report(const LKModulars& m, double C1, double C2,
                                  const std::string& subject = {}) {
  const auto id = m.theta == 1.0 ? InequalityId::statB1gauss : InequalityId::statB1_theta;
  if (std::isfinite(m.H) && std::isfinite(m.U) && !std::isfinite(m.G)) {
    CheckReport r;
    r.id = id;
    r.subject = subject;
    r.lhs = m.G;
    r.rhs = C1 * m.H + C2 * m.U;
    r.slack = -std::numeric_limits<double>::infinity();
    r.theta = m.theta;
    r.verdict = Verdict::fails;
    r.note = "gradient modular infinite while both right-hand modulars are finite";
    return r;
  }
  auto r = make_report(id, subject, m.G, C1 * m.H + C2 * m.U,
                       m.err_G + C1 * m.err_H + C2 * m.err_U, {{"C1", C1}, {"C2", C2}});
  r.theta = m.theta;
  r.terms = {{"grad_modular", m.G}, {"hess_modular", m.H}, {"u_modular", m.U}};
  if (m.angular_warning) r.note = "angular sampling error above rel_tol";
  return r;
}

/// ∫M(|∇u|) vs C1 ∫M(θ|∇²u|) + C2 ∫M(|u|/θ).
inline LKReport check_lk_modular(const FieldFunction& u, const NFunction& nf, double C1,
                                 double C2, double theta = 1.0, const QuadratureSpec& spec = {},
                                 const std::string& subject = {}) {
  return lk_modular_report(lk_modulars(u, nf, theta, spec), C1, C2, subject);
}

// --------------------------------------------------------------------------
// Norm form

struct LKNorms {
  double grad = 0.0;  // r(u) = ‖∇u‖
  double hess = 0.0;  // ‖∇²u‖
  double u = 0.0;     // t(u) = ‖u‖
  double s() const { return std::sqrt(hess * u); }
};

inline LKNorms lk_norms(const FieldFunction& u, const NFunction& nf,
                        const QuadratureSpec& spec = {}) {
  detail::require_lk_hypotheses(u, nf);
  const int n = u.n;
  LKNorms out;
  out.u = luxemburg_norm_nd(u.u, nf, n, spec, field_envelope(u.support, nf, 0.0));
  if (out.u == 0.0) return out;
  out.grad = luxemburg_norm_nd([&](Point x) { return euclidean_norm(u.grad(x)); }, nf, n, spec,
                               field_envelope(u.support, nf, 1.0));
  out.hess = luxemburg_norm_nd([&](Point x) { return detail::hessian_hs(u, x); }, nf, n, spec,
                               field_envelope(u.support, nf, 2.0));
  return out;
}

inline LKReport lk_norm_report(const LKNorms& v, double C1, double C2,
                               const std::string& subject = {}) {
  const double rhs = C1 * v.s() + C2 * v.u;
  auto r = make_report(InequalityId::statB2gauss, subject, v.grad, rhs, 1e-8 * (v.grad + rhs),
                       {{"C1", C1}, {"C2", C2}});
  r.terms = {{"norm_grad", v.grad}, {"norm_hess", v.hess}, {"norm_u", v.u}, {"s", v.s()}};
  return r;
}

inline LKReport check_lk_norm(const FieldFunction& u, const NFunction& nf, double C1, double C2,
                              const QuadratureSpec& spec = {}, const std::string& subject = {}) {
  return lk_norm_report(lk_norms(u, nf, spec), C1, C2, subject);
}

// --------------------------------------------------------------------------
// Constant fitting

/// One corpus member reduced to lhs <= C1 a + C2 b.
struct FitSample {
  std::string member;
  double lhs = 0.0;
  double a = 0.0;
  double b = 0.0;
};

struct FittedConstants {
  double C1 = std::numeric_limits<double>::infinity();
  double C2 = std::numeric_limits<double>::infinity();
  /// Member attaining the max that defines C2 at the chosen C1.
  std::string binding;
  /// (C1, minimal C2) for every grid value.
  std::vector<std::pair<double, double>> envelope;
  bool finite() const { return std::isfinite(C1) && std::isfinite(C2); }
};

inline std::vector<double> default_fit_grid() { return logspace(1e-2, 1e3, 51); }

/// For each C1 on the grid, the least C2 making every sample hold; the pair
/// minimising C1 + C2 is returned.
inline FittedConstants fit_constants(const std::vector<FitSample>& samples,
                                     const std::vector<double>& c1_grid) {
  if (c1_grid.empty()) throw PreconditionError("fit_constants: empty C1 grid");
  FittedConstants out;
  double best = std::numeric_limits<double>::infinity();
  for (double c1 : c1_grid) {
    if (!(c1 >= 0.0)) throw PreconditionError("fit_constants: C1 grid must be nonnegative");
    double c2 = 0.0;
    std::string arg;
    for (const auto& s : samples) {
      const double excess = s.lhs - c1 * s.a;
      if (excess <= 0.0) continue;
      const double need = s.b > 0.0 ? excess / s.b : std::numeric_limits<double>::infinity();
      if (need > c2) {
        c2 = need;
        arg = s.member;
      }
    }
    out.envelope.emplace_back(c1, c2);
    if (c1 + c2 < best) {
      best = c1 + c2;
      out.C1 = c1;
      out.C2 = c2;
      out.binding = arg;
    }
  }
  return out;
}

inline FitSample modular_sample(const std::string& member, const LKModulars& m) {
  return {member, m.G, m.H, m.U};
}

inline FitSample norm_sample(const std::string& member, const LKNorms& v) {
  return {member, v.grad, v.s(), v.u};
}

inline std::map<std::string, double> fitted_constants_map(const FittedConstants& f) {
  return {{"C1", f.C1}, {"C2", f.C2}};
}

// --------------------------------------------------------------------------
// Hardy -> Landau–Kolmogorov chain

/// Runs the n-d Hardy check (hn1) for u and, if it is not violated, the θ = 1
/// modular check with the supplied constants.
inline LKReport additive_lk_from_hardy(const FieldFunction& u, const NFunction& nf, double C1,
                                       double C2, const QuadratureSpec& spec = {},
                                       const std::string& subject = {},
                                       const std::string& provenance = "supplied") {
  detail::require_lk_hypotheses(u, nf);
  const auto hardy = check_nd(u, nf, NdForm::hn1, spec, subject);
  if (hardy.verdict == Verdict::fails) {
    throw HypothesisError(nf.label + ": Hardy inequality hn1 fails for " + u.label +
                          "; the Landau-Kolmogorov bound has no hypothesis to rest on");
  }
  auto r = check_lk_modular(u, nf, C1, C2, 1.0, spec, subject);
  r.constants_used["hardy_C1"] = hardy.constants_used.at("C1");
  r.constants_used["hardy_C2"] = hardy.constants_used.at("C2");
  r.terms["hardy_slack"] = hardy.slack;
  r.note = std::string("chain: hn1 ") + to_string(hardy.verdict) + " -> statB1gauss; constants " +
           provenance;
  return r;
}

}  // namespace orlicz
