#pragma once

// Suites over a corpus and the run report they produce.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "orlicz/corpus.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/fields.hpp"
#include "orlicz/functionals.hpp"
#include "orlicz/hardy.hpp"
#include "orlicz/landau_kolmogorov.hpp"
#include "orlicz/mazya.hpp"
#include "orlicz/nfunc.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/report.hpp"
#include "orlicz/sharpness.hpp"

#ifndef ORLICZ_VERSION
#define ORLICZ_VERSION "0.0.0"
#endif

namespace orlicz {

struct RunOptions {
  std::vector<int> dims{1, 2, 3};
  /// Restrict to one N-function label / one inequality id.
  std::optional<std::string> nfunc;
  std::optional<std::string> form;
  QuadratureSpec spec;
  double rho = 1.5;
  /// Field members (in manifest order) that also get the n-d norm form.
  int norm_form_members = 3;
  std::vector<double> theta_grid{0.25, 0.5, 1.0};
  std::vector<double> fit_grid = default_fit_grid();
  std::vector<std::string> lk_nfunctions{"r^2", "r^3"};
  std::vector<double> alpha_grid = default_alpha_grid();
  std::vector<double> sharpness_p{2.0, 3.0, 4.0};
  std::vector<double> mazya_p{1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
};

struct CsvSeries {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct SkippedCheck {
  std::string key;
  std::string reason;
};

struct Summary {
  int holds = 0;
  int fails = 0;
  int indeterminate = 0;
  int trivial = 0;
};

struct RunReport {
  std::string tool_version = ORLICZ_VERSION;
  std::string suite;
  std::string manifest_source;
  std::string manifest_fingerprint;
  QuadratureSpec spec;
  std::vector<CheckReport> checks;
  std::vector<SkippedCheck> skipped;
  /// label -> fingerprint of every corpus member a check used.
  std::map<std::string, std::string> members;
  nlohmann::json details = nlohmann::json::object();
  std::vector<CsvSeries> series;

  Summary summary() const {
    Summary s;
    for (const auto& c : checks) {
      switch (c.verdict) {
        case Verdict::holds: ++s.holds; break;
        case Verdict::fails: ++s.fails; break;
        case Verdict::indeterminate: ++s.indeterminate; break;
        case Verdict::trivial: ++s.trivial; break;
      }
    }
    return s;
  }

  int exit_code() const { return summary().fails > 0 ? 1 : 0; }

  void merge(RunReport other) {
    for (auto& c : other.checks) checks.push_back(std::move(c));
    for (auto& s : other.skipped) skipped.push_back(std::move(s));
    members.insert(other.members.begin(), other.members.end());
    for (auto& [k, v] : other.details.items()) details[k] = v;
    for (auto& s : other.series) series.push_back(std::move(s));
  }

  /// Sorted by key; ties keep insertion order.
  void finalize() {
    std::stable_sort(checks.begin(), checks.end(),
                     [](const CheckReport& a, const CheckReport& b) { return a.key() < b.key(); });
    std::stable_sort(skipped.begin(), skipped.end(),
                     [](const SkippedCheck& a, const SkippedCheck& b) { return a.key < b.key; });
    std::stable_sort(series.begin(), series.end(),
                     [](const CsvSeries& a, const CsvSeries& b) { return a.name < b.name; });
  }
};

inline nlohmann::json spec_json(const QuadratureSpec& s) {
  nlohmann::json j;
  j["rel_tol"] = s.rel_tol;
  j["abs_tol"] = s.abs_tol;
  j["max_radius_policy"] = s.fixed_radius ? "fixed" : "automatic";
  if (s.fixed_radius) j["fixed_radius"] = *s.fixed_radius;
  j["sphere_nodes"] = s.sphere_nodes;
  j["seed"] = s.seed;
  j["normalization"] = to_string(s.normalization);
  return j;
}

inline nlohmann::json to_json(const RunReport& r, bool with_metadata = true) {
  nlohmann::json j;
  j["tool_version"] = r.tool_version;
  j["suite"] = r.suite;
  j["manifest"] = {{"source", r.manifest_source}, {"fingerprint", r.manifest_fingerprint}};
  j["quadrature"] = spec_json(r.spec);
  j["checks"] = nlohmann::json::array();
  for (const auto& c : r.checks) j["checks"].push_back(to_json(c));
  j["skipped"] = nlohmann::json::array();
  for (const auto& s : r.skipped) j["skipped"].push_back({{"key", s.key}, {"reason", s.reason}});
  j["members"] = r.members;
  j["details"] = r.details;
  const auto s = r.summary();
  j["summary"] = {{"holds", s.holds},
                  {"fails", s.fails},
                  {"indeterminate", s.indeterminate},
                  {"trivial", s.trivial}};
  if (with_metadata) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    j["metadata"] = {{"timestamp", buf}};
  }
  return j;
}

inline std::string to_csv(const CsvSeries& s) {
  std::string out;
  for (std::size_t i = 0; i < s.columns.size(); ++i) out += (i ? "," : "") + s.columns[i];
  out += "\n";
  for (const auto& row : s.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_double(row[i]);
    out += "\n";
  }
  return out;
}

namespace detail {

inline std::string subject(const std::string& nf, const std::string& u, int n) {
  return "nf=" + nf + ";u=" + u + ";n=" + std::to_string(n);
}

inline bool wanted(const RunOptions& opt, InequalityId id) {
  return !opt.form || *opt.form == to_string(id);
}

inline bool wanted_any(const RunOptions& opt, std::initializer_list<InequalityId> ids) {
  if (!opt.form) return true;
  for (auto id : ids) {
    if (*opt.form == to_string(id)) return true;
  }
  return false;
}

inline std::vector<const NFunctionEntry*> selected_nfunctions(const CorpusManifest& m,
                                                              const RunOptions& opt) {
  std::vector<const NFunctionEntry*> out;
  for (const auto& e : m.nfunctions) {
    if (!opt.nfunc || *opt.nfunc == e.label) out.push_back(&e);
  }
  if (opt.nfunc && out.empty()) throw PreconditionError("unknown N-function '" + *opt.nfunc + "'");
  return out;
}

inline RunReport start_report(const std::string& suite, const CorpusManifest* m,
                              const RunOptions& opt) {
  RunReport r;
  r.suite = suite;
  r.spec = opt.spec;
  if (m) {
    r.manifest_source = m->source;
    r.manifest_fingerprint = m->fingerprint;
  }
  return r;
}

template <class Body>
void guarded(RunReport& rep, const std::string& key, Body&& body) {
  try {
    body();
  } catch (const HypothesisError& e) {
    rep.skipped.push_back({key, std::string("hypothesis: ") + e.what()});
  } catch (const OutOfRegimeError& e) {
    rep.skipped.push_back({key, std::string("out of regime: ") + e.what()});
  } catch (const PreconditionError& e) {
    rep.skipped.push_back({key, std::string("precondition: ") + e.what()});
  } catch (const DivergenceError& e) {
    rep.skipped.push_back({key, std::string("divergent: ") + e.what()});
  } catch (const AccuracyError& e) {
    rep.skipped.push_back({key, std::string("accuracy: ") + e.what()});
  } catch (const EvaluationError& e) {
    rep.skipped.push_back({key, std::string("evaluation: ") + e.what()});
  }
}

inline CheckReport closed_form_report(const std::string& subject, double rel_err, double tol,
                                      std::map<std::string, double> terms = {}) {
  auto r = make_report(InequalityId::closed_form, subject, rel_err, tol, 0.0, {{"tolerance", tol}});
  r.tolerance = 0.0;
  r.verdict = rel_err <= tol ? Verdict::holds : Verdict::fails;
  r.terms = std::move(terms);
  return r;
}

inline double rel_err(double a, double b) {
  const double scale = std::max(std::abs(b), 1e-300);
  return a == b ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace detail

// --------------------------------------------------------------------------
// Hardy

inline RunReport run_hardy(const CorpusManifest& m, const RunOptions& opt) {
  auto rep = detail::start_report("hardy", &m, opt);
  const auto nfs = detail::selected_nfunctions(m, opt);
  for (int n : opt.dims) {
    for (const auto* ne : nfs) {
      const auto& nf = ne->nf;
      const double d = nf.lower_exponent(), D = nf.upper_exponent();
      const bool hardy_hyp = d >= 2.0 && D > 2.0;
      const bool regime = hardy_hyp && D + n >= kEulerE + 2.0;
      for (const auto& re : m.radial_functions) {
        const auto subj = detail::subject(ne->label, re.label, n);
        ModularTriple t;
        try {
          t = modular_triple_radial(re.fn, nf, n, opt.spec);
        } catch (const Error& e) {
          rep.skipped.push_back({"radial|" + subj, std::string("modular evaluation: ") + e.what()});
          continue;
        }
        if (!t.valid()) {
          rep.skipped.push_back({"radial|" + subj, "modular diverges (" + t.note + ")"});
          continue;
        }
        rep.members[ne->label] = ne->fingerprint;
        rep.members[re.label] = re.fingerprint;
        if (hardy_hyp && detail::wanted_any(opt, {InequalityId::alternative, InequalityId::term1,
                                                  InequalityId::term2})) {
          auto alt = check_alternative(t, d, D, n, subj);
          rep.checks.push_back(alt.disjunction);
          if (alt.term2_only) rep.checks.push_back(*alt.term2_only);
        }
        if (regime && detail::wanted(opt, InequalityId::liniowe)) {
          const auto c = linear_constants(D, d, n);
          rep.checks.push_back(check_linear(t, c.C1, c.C2, subj));
        }
        if (regime && detail::wanted_any(opt, {InequalityId::tradeoff_beta,
                                               InequalityId::tradeoff_gamma})) {
          auto [b, g] = tradeoff_check(t, opt.rho, D, n, subj);
          rep.checks.push_back(b);
          rep.checks.push_back(g);
        }
        if (nf.power_exponent && *nf.power_exponent == 2.0 &&
            detail::wanted(opt, InequalityId::p2_exact)) {
          rep.checks.push_back(check_p2_exact(t, n, subj));
        }
        if (ne->certificate.convex_increasing && detail::wanted(opt, InequalityId::ww)) {
          rep.checks.push_back(check_convex_case(t, D, n, subj));
        }
        if (ne->certificate.convex_increasing && detail::wanted(opt, InequalityId::www)) {
          detail::guarded(rep, "www|" + subj, [&] {
            rep.checks.push_back(check_norm_form_radial(re.fn, nf, n, opt.spec, subj));
          });
        }
      }
      int field_index = 0;
      for (const auto& fe : m.field_functions) {
        if (n < fe.min_dim) continue;
        const auto u = fe.make(n);
        const auto subj = detail::subject(ne->label, fe.label, n);
        rep.members[fe.label] = fe.fingerprint;
        std::vector<NdForm> forms{NdForm::wwww, NdForm::hn1};
        if (field_index++ < opt.norm_form_members) forms.push_back(NdForm::hn11);
        for (auto form : forms) {
          if (opt.form && *opt.form != to_string(form)) continue;
          detail::guarded(rep, std::string(to_string(form)) + "|" + subj,
                          [&] { rep.checks.push_back(check_nd(u, nf, form, opt.spec, subj)); });
        }
      }
    }
  }
  return rep;
}

// --------------------------------------------------------------------------
// Sharpness

inline RunReport run_sharpness(const RunOptions& opt) {
  auto rep = detail::start_report("sharpness", nullptr, opt);
  nlohmann::json summary = nlohmann::json::object();
  for (double p : opt.sharpness_p) {
    const auto nf = power_nfunction(p);
    for (int n : opt.dims) {
      const std::string tag = "p=" + format_double(p) + ";n=" + std::to_string(n);
      CsvSeries csv{"sharpness_p" + format_double(p) + "_n" + std::to_string(n),
                    {"alpha", "K", "L", "G", "C1_req"},
                    {}};
      const double c2 = std::pow(p, p);
      for (double a : opt.alpha_grid) {
        const ExtremalParams prm{a, p, n};
        const auto closed = extremal_moments(prm);
        const double c1_req = (closed.K - c2 * closed.G) / closed.L;
        csv.rows.push_back({a, closed.K, closed.L, closed.G, c1_req});
        const std::string subj = tag + ";alpha=" + format_double(a);
        if (a <= 0.9) {
          detail::guarded(rep, "closed_form|" + subj, [&] {
            const auto q = modular_triple_radial(extremal_function(prm), nf, n, opt.spec);
            const double e = std::max({detail::rel_err(q.K, closed.K),
                                       detail::rel_err(q.L, closed.L),
                                       a == 0.0 ? std::abs(q.G) : detail::rel_err(q.G, closed.G)});
            rep.checks.push_back(detail::closed_form_report(
                "extremal_moments;" + subj, e, 1e-7, {{"K", q.K}, {"L", q.L}, {"G", q.G}}));
          });
        }
        if (p == 2.0) {
          auto r = check_p2_exact(closed, n, "extremal;" + subj);
          r.terms["n_times_1_plus_alpha"] = n * (1.0 + a);
          rep.checks.push_back(r);
        }
      }
      const double lb = c1_lower_bound(p, n);
      const auto at0 = extremal_moments({0.0, p, n});
      rep.checks.push_back(detail::closed_form_report(
          "c1_lower_bound;" + tag, detail::rel_err(at0.K / at0.L, lb), 1e-8,
          {{"c1_lower_bound", lb}, {"K_over_L_alpha0", at0.K / at0.L}}));
      nlohmann::json entry{{"c1_lower_bound", lb}};
      if (p > 2.0) {
        std::vector<double> alphas;
        for (double a : opt.alpha_grid) alphas.push_back(a);
        const auto scan = c2_infeasibility_scan(p, n, alphas);
        nlohmann::json series = nlohmann::json::array();
        for (const auto& pt : scan) series.push_back({{"alpha", pt.alpha}, {"C1_req", pt.c1_required}});
        entry["c2_infeasibility"] = series;
        nlohmann::json st = nlohmann::json::object();
        for (double nn : {10.0, 100.0, 1000.0, 10000.0}) {
          st[format_double(nn)] = stirling_ratio(p, nn);
        }
        entry["stirling_ratio"] = st;
      }
      summary[tag] = entry;
      rep.series.push_back(std::move(csv));
    }
  }
  rep.details["sharpness"] = summary;
  return rep;
}

// --------------------------------------------------------------------------
// Maz'ya

struct TransformSample {
  std::string label;
  std::function<double(double)> f;
  std::vector<double> breaks;
};

inline std::vector<TransformSample> default_transform_corpus() {
  return {
      {"indicator[1,2]", [](double x) { return x >= 1.0 && x <= 2.0 ? 1.0 : 0.0; }, {1.0, 2.0}},
      {"exp(-x)", [](double x) { return std::exp(-x); }, {}},
      {"tent[0.5,1.5]",
       [](double x) { return std::max(0.0, 0.5 - std::abs(x - 1.0)); },
       {0.5, 1.0, 1.5}},
  };
}

inline nlohmann::json mazya_json(const MazyaResult& r) {
  return {{"B", json_number(r.divergent ? std::numeric_limits<double>::infinity() : r.value)},
          {"argmax_r", r.argmax_r},
          {"divergent", r.divergent},
          {"reason", r.reason}};
}

inline void mazya_transform_checks(RunReport& rep, const MeasurePair& pair,
                                   const MazyaResult& b) {
  const double C = b.value * mazya_factor(pair.p, pair.q);
  for (const auto& s : default_transform_corpus()) {
    const std::string subj = pair.label + ";f=" + s.label;
    detail::guarded(rep, "hardy_transform|" + subj, [&] {
      rep.checks.push_back(check_hardy_transform(s.f, pair, C, s.breaks, subj, b.value));
    });
  }
}

/// A single pair given on the command line.
inline RunReport run_mazya_pair(const MeasurePair& pair, const RunOptions& opt,
                                bool transform = true) {
  auto rep = detail::start_report("mazya", nullptr, opt);
  const auto b = mazya_B(pair);
  rep.details["mazya"][pair.label] = mazya_json(b);
  CsvSeries csv{"mazya_objective_" + pair.label, {"r", "B_r"}, {}};
  for (const auto& [r, v] : b.objective) csv.rows.push_back({r, v});
  rep.series.push_back(std::move(csv));
  if (!b.divergent && transform) mazya_transform_checks(rep, pair, b);
  return rep;
}

inline RunReport run_mazya_gaussian(double p, int n, const RunOptions& opt,
                                    bool transform = true) {
  auto rep = detail::start_report("mazya", nullptr, opt);
  const auto v = gaussian_hardy_pq(p, n);
  rep.checks.push_back(v.report);
  const auto pair = gaussian_measure_pair(p, n);
  rep.details["mazya"][pair.label] = mazya_json(v.mazya);
  if (v.finite && transform) mazya_transform_checks(rep, pair, v.mazya);
  return rep;
}

inline RunReport run_mazya(const RunOptions& opt) {
  auto rep = detail::start_report("mazya", nullptr, opt);
  const auto classical = classical_hardy_pair();
  const auto cb = mazya_B(classical);
  rep.details["mazya"][classical.label] = mazya_json(cb);
  rep.checks.push_back(detail::closed_form_report("mazya_B;classical", std::abs(cb.value - 1.0),
                                                  1e-6, {{"B", cb.value}}));
  mazya_transform_checks(rep, classical, cb);
  for (double p : opt.mazya_p) {
    for (int n : {1, 2, 3}) rep.merge(run_mazya_gaussian(p, n, opt));
  }
  return rep;
}

// --------------------------------------------------------------------------
// Landau–Kolmogorov

inline RunReport run_lk(const CorpusManifest& m, const RunOptions& opt) {
  auto rep = detail::start_report("lk", &m, opt);
  nlohmann::json fits = nlohmann::json::object();
  for (const auto& label : opt.lk_nfunctions) {
    if (opt.nfunc && *opt.nfunc != label) continue;
    const auto& ne = m.nfunction(label);
    const auto& nf = ne.nf;
    rep.members[ne.label] = ne.fingerprint;
    for (int n : opt.dims) {
      const std::string tag = "nf=" + label + ";n=" + std::to_string(n);
      std::vector<std::pair<std::string, FieldFunction>> fields;
      for (const auto& fe : m.field_functions) {
        if (n < fe.min_dim) continue;
        fields.emplace_back(fe.label, fe.make(n));
        rep.members[fe.label] = fe.fingerprint;
      }
      std::map<double, std::vector<LKModulars>> by_theta;
      std::vector<FitSample> modular, norm;
      for (const auto& [lbl, u] : fields) {
        for (double th : opt.theta_grid) by_theta[th].push_back(lk_modulars(u, nf, th, opt.spec));
        modular.push_back(modular_sample(lbl, lk_modulars(u, nf, 1.0, opt.spec)));
        norm.push_back(norm_sample(lbl, lk_norms(u, nf, opt.spec)));
      }
      const auto fm = fit_constants(modular, opt.fit_grid);
      const auto fn = fit_constants(norm, opt.fit_grid);
      const std::string prov = "fitted at theta=1 over " + std::to_string(fields.size()) +
                               " field members; binding " + fm.binding;
      for (std::size_t i = 0; i < fields.size(); ++i) {
        const auto subj = detail::subject(label, fields[i].first, n);
        if (detail::wanted(opt, InequalityId::statB1gauss)) {
          detail::guarded(rep, "statB1gauss|" + subj, [&] {
            rep.checks.push_back(
                additive_lk_from_hardy(fields[i].second, nf, fm.C1, fm.C2, opt.spec, subj, prov));
          });
        }
        if (detail::wanted(opt, InequalityId::statB1_theta)) {
          for (const auto& [th, ms] : by_theta) {
            if (th == 1.0) continue;
            auto r = lk_modular_report(ms[i], fm.C1, fm.C2, subj + ";theta=" + format_double(th));
            r.note = prov;
            rep.checks.push_back(r);
          }
        }
        if (detail::wanted(opt, InequalityId::statB2gauss)) {
          const auto& s = norm[i];
          auto r = make_report(InequalityId::statB2gauss, subj, s.lhs, fn.C1 * s.a + fn.C2 * s.b,
                               1e-8 * (s.lhs + fn.C1 * s.a + fn.C2 * s.b),
                               fitted_constants_map(fn));
          r.terms = {{"norm_grad", s.lhs}, {"s", s.a}, {"norm_u", s.b}};
          r.note = "fitted over " + std::to_string(fields.size()) + " field members; binding " +
                   fn.binding;
          rep.checks.push_back(r);
        }
      }
      auto fit_json = [](const FittedConstants& f) {
        nlohmann::json env = nlohmann::json::array();
        for (const auto& [a, b] : f.envelope) env.push_back({json_number(a), json_number(b)});
        return nlohmann::json{{"C1", json_number(f.C1)},
                              {"C2", json_number(f.C2)},
                              {"binding", f.binding},
                              {"finite", f.finite()},
                              {"envelope", env}};
      };
      fits[tag] = {{"modular", fit_json(fm)}, {"norm", fit_json(fn)}};
      CsvSeries csv{"lk_theta_" + label + "_n" + std::to_string(n),
                    {"theta", "member", "grad_modular", "hess_modular", "u_modular", "rhs"},
                    {}};
      for (const auto& [th, ms] : by_theta) {
        for (std::size_t i = 0; i < ms.size(); ++i) {
          csv.rows.push_back({th, static_cast<double>(i), ms[i].G, ms[i].H, ms[i].U,
                              fm.C1 * ms[i].H + fm.C2 * ms[i].U});
        }
      }
      rep.series.push_back(std::move(csv));
    }
  }
  rep.details["lk_fits"] = fits;
  return rep;
}

// --------------------------------------------------------------------------
// Certification and pointwise lemmas

inline RunReport run_certify(const CorpusManifest& m, const RunOptions& opt) {
  auto rep = detail::start_report("certify", &m, opt);
  nlohmann::json certs = nlohmann::json::object();
  const auto grid = logspace(1e-3, 1e1, 50);
  for (const auto* ne : detail::selected_nfunctions(m, opt)) {
    const auto& nf = ne->nf;
    const auto& c = ne->certificate;
    rep.members[ne->label] = ne->fingerprint;
    certs[ne->label] = {{"d_M", nf.lower_exponent()},
                        {"D_M", nf.upper_exponent()},
                        {"d_est", c.growth.d_est},
                        {"D_est", c.growth.D_est},
                        {"pinned", nf.exponents_pinned},
                        {"delta2_const", json_number(nf.delta2_const.value_or(NAN))},
                        {"delta2_est", c.delta2.C_est},
                        {"convex_increasing", c.convex_increasing},
                        {"grid", m.grid.describe()},
                        {"grid_fingerprint", c.growth.grid_fingerprint}};
    const double d = nf.lower_exponent(), D = nf.upper_exponent();
    if (d >= 2.0 && D > 2.0 && detail::wanted(opt, InequalityId::lemma_split)) {
      int tested = 0, violations = 0;
      double worst = 0.0;
      for (double r : grid) {
        for (double s : grid) {
          for (double lambda : {1.0 / d, 1.0, 10.0}) {
            for (int alpha : {1, 2}) {
              const auto pc = check_lemma_split(nf, r, s, lambda, alpha);
              ++tested;
              if (!pc.holds) ++violations;
              worst = std::max(worst, (pc.lhs - pc.rhs) / std::max(1.0, std::abs(pc.rhs)));
            }
          }
        }
      }
      auto rr = make_report(InequalityId::lemma_split, "nf=" + ne->label, violations, 0.0, 0.0,
                            {{"tested", tested}});
      rr.terms = {{"worst_relative_excess", worst}};
      rep.checks.push_back(rr);
    }
    if (c.convex_increasing && detail::wanted(opt, InequalityId::lemma_young)) {
      int tested = 0, violations = 0;
      for (double a : grid) {
        for (double b : grid) {
          for (double eps : {1e-3, 0.1, 1.0}) {
            const auto pc = check_lemma_young(nf, a, b, eps);
            ++tested;
            if (!pc.holds) ++violations;
          }
        }
      }
      rep.checks.push_back(make_report(InequalityId::lemma_young, "nf=" + ne->label, violations,
                                       0.0, 0.0, {{"tested", tested}}));
    }
  }
  rep.details["certificates"] = certs;
  return rep;
}

inline RunReport run_all(const CorpusManifest& m, const RunOptions& opt) {
  auto rep = detail::start_report("all", &m, opt);
  rep.merge(run_certify(m, opt));
  rep.merge(run_hardy(m, opt));
  rep.merge(run_sharpness(opt));
  rep.merge(run_mazya(opt));
  rep.merge(run_lk(m, opt));
  rep.finalize();
  return rep;
}

}  // namespace orlicz
