#pragma once

// Per-inequality outcomes and their canonical JSON form.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "orlicz/hash.hpp"

namespace orlicz {

enum class InequalityId {
  alternative,     // term1 or term2
  term1,
  term2,           // term2 alone (D_M + n >= e + 2)
  liniowe,         // K <= C1 L + C2 G
  tradeoff_beta,
  tradeoff_gamma,
  ww,              // convex case, radial
  www,             // convex case, norm form, radial
  hn1,
  hn11,
  wwww,
  p2_exact,        // (1/4) K <= (n/2) L + G
  hardy_transform,
  mazya_gaussian,
  statB1gauss,
  statB2gauss,
  statB1_theta,
  closed_form,     // numerical value against a closed form
  lemma_split,     // pointwise split bound, violation count over a grid
  lemma_young,     // pointwise Young-type bound, violation count over a grid
};

inline const char* to_string(InequalityId id) {
  switch (id) {
    case InequalityId::alternative: return "alternative";
    case InequalityId::term1: return "term1";
    case InequalityId::term2: return "term2";
    case InequalityId::liniowe: return "liniowe";
    case InequalityId::tradeoff_beta: return "tradeoff_beta";
    case InequalityId::tradeoff_gamma: return "tradeoff_gamma";
    case InequalityId::ww: return "ww";
    case InequalityId::www: return "www";
    case InequalityId::hn1: return "hn1";
    case InequalityId::hn11: return "hn11";
    case InequalityId::wwww: return "wwww";
    case InequalityId::p2_exact: return "p2_exact";
    case InequalityId::hardy_transform: return "hardy_transform";
    case InequalityId::mazya_gaussian: return "mazya_gaussian";
    case InequalityId::statB1gauss: return "statB1gauss";
    case InequalityId::statB2gauss: return "statB2gauss";
    case InequalityId::statB1_theta: return "statB1_theta";
    case InequalityId::closed_form: return "closed_form";
    case InequalityId::lemma_split: return "lemma_split";
    case InequalityId::lemma_young: return "lemma_young";
  }
  return "unknown";
}

enum class Verdict { holds, fails, indeterminate, trivial };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::indeterminate: return "indeterminate";
    case Verdict::trivial: return "trivial";
  }
  return "unknown";
}

struct CheckReport {
  InequalityId id = InequalityId::liniowe;
  std::string subject;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double tolerance = 0.0;
  double err_est = 0.0;
  std::map<std::string, double> constants_used;
  std::map<std::string, double> terms;
  std::optional<double> theta;
  Verdict verdict = Verdict::holds;
  std::string note;

  bool ok() const { return verdict != Verdict::fails; }
  std::string key() const { return std::string(to_string(id)) + "|" + subject; }
};

using LKReport = CheckReport;

/// Relative floor shared by every comparison.
inline double report_tolerance(double rhs) { return 1e-12 * std::max(1.0, std::abs(rhs)); }

/// holds when slack >= -tol; indeterminate when the shortfall is within the
/// quadrature error estimate; fails otherwise.
inline Verdict classify(double slack, double tolerance, double err_est) {
  if (std::isnan(slack)) return Verdict::indeterminate;
  if (slack >= -tolerance) return Verdict::holds;
  if (slack >= -(tolerance + err_est)) return Verdict::indeterminate;
  return Verdict::fails;
}

inline CheckReport make_report(InequalityId id, std::string subject, double lhs, double rhs,
                               double err_est, std::map<std::string, double> constants = {}) {
  CheckReport r;
  r.id = id;
  r.subject = std::move(subject);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.err_est = err_est;
  r.tolerance = report_tolerance(rhs);
  r.constants_used = std::move(constants);
  r.verdict = classify(r.slack, r.tolerance, r.err_est);
  return r;
}

inline CheckReport trivial_report(InequalityId id, std::string subject, std::string note) {
  CheckReport r;
  r.id = id;
  r.subject = std::move(subject);
  r.verdict = Verdict::trivial;
  r.note = std::move(note);
  return r;
}

// --------------------------------------------------------------------------
// JSON

/// JSON cannot carry inf/nan; they are written as strings.
inline nlohmann::json json_number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

inline nlohmann::json json_map(const std::map<std::string, double>& m) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : m) j[k] = json_number(v);
  return j;
}

inline nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json j;
  j["id"] = to_string(r.id);
  j["subject"] = r.subject;
  j["lhs"] = json_number(r.lhs);
  j["rhs"] = json_number(r.rhs);
  j["slack"] = json_number(r.slack);
  j["tolerance"] = json_number(r.tolerance);
  j["err_est"] = json_number(r.err_est);
  j["constants_used"] = json_map(r.constants_used);
  if (!r.terms.empty()) j["terms"] = json_map(r.terms);
  if (r.theta) j["theta"] = json_number(*r.theta);
  j["verdict"] = to_string(r.verdict);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

namespace detail {

inline void canonical_write(const nlohmann::json& j, std::string& out, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map keeps keys sorted
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        out += nlohmann::json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        canonical_write(it.value(), out, indent, depth + 1);
      }
      out += nl;
      out += close_pad;
      out += "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      out += nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) {
          out += ",";
          out += nl;
        }
        out += pad;
        canonical_write(j[i], out, indent, depth + 1);
      }
      out += nl;
      out += close_pad;
      out += "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace detail

/// Sorted keys and 17-significant-digit floats.
inline std::string canonical_dump(const nlohmann::json& j, int indent = 2) {
  std::string out;
  detail::canonical_write(j, out, indent, 0);
  out += "\n";
  return out;
}

/// Canonical text with the volatile "metadata" member removed.
inline std::string canonical_for_comparison(nlohmann::json j) {
  if (j.is_object()) j.erase("metadata");
  return canonical_dump(j, 0);
}

}  // namespace orlicz
