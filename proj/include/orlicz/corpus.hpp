#pragma once

// Declarative corpus manifests: N-functions, radial test functions and
// n-d field functions, validated and certified at load.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "orlicz/errors.hpp"
#include "orlicz/fields.hpp"
#include "orlicz/functionals.hpp"
#include "orlicz/hash.hpp"
#include "orlicz/nfunc.hpp"
#include "orlicz/report.hpp"
#include "orlicz/sharpness.hpp"

namespace orlicz {

inline constexpr int kManifestSchemaVersion = 1;

// --------------------------------------------------------------------------
// Certification cache

struct NFunctionCertificate {
  GrowthCertificate growth;
  Delta2Certificate delta2;
  bool convex_increasing = false;
};

/// Certificates keyed by (member fingerprint, grid fingerprint).
class CertificationCache {
 public:
  static CertificationCache& instance() {
    static CertificationCache cache;
    return cache;
  }

  template <class Compute>
  NFunctionCertificate get(const std::string& member_fp, const std::string& grid_fp,
                           Compute&& compute) {
    const auto key = std::make_pair(member_fp, grid_fp);
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (auto it = entries_.find(key); it != entries_.end()) {
        ++hits_;
        return it->second;
      }
    }
    auto cert = compute();
    std::lock_guard<std::mutex> lock(mu_);
    ++misses_;
    entries_.emplace(key, cert);
    return cert;
  }

  std::size_t hits() const {
    std::lock_guard<std::mutex> lock(mu_);
    return hits_;
  }
  std::size_t misses() const {
    std::lock_guard<std::mutex> lock(mu_);
    return misses_;
  }
  void clear() {
    std::lock_guard<std::mutex> lock(mu_);
    entries_.clear();
    hits_ = misses_ = 0;
  }

 private:
  mutable std::mutex mu_;
  std::map<std::pair<std::string, std::string>, NFunctionCertificate> entries_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

// --------------------------------------------------------------------------
// Manifest types

struct NFunctionEntry {
  std::string label;
  std::string kind;
  std::string fingerprint;
  NFunction nf;
  NFunctionCertificate certificate;
};

struct RadialEntry {
  std::string label;
  std::string kind;
  std::string fingerprint;
  RadialTestFunction fn;
  FunctionValidation validation;
};

struct FieldEntry {
  std::string label;
  std::string kind;
  std::string fingerprint;
  int min_dim = 1;
  std::function<FieldFunction(int)> make;
};

struct CorpusManifest {
  int schema_version = kManifestSchemaVersion;
  std::string source;
  std::string fingerprint;
  GridSpec grid;
  std::vector<NFunctionEntry> nfunctions;
  std::vector<RadialEntry> radial_functions;
  std::vector<FieldEntry> field_functions;

  const NFunctionEntry& nfunction(const std::string& label) const {
    for (const auto& e : nfunctions) {
      if (e.label == label) return e;
    }
    throw PreconditionError("manifest has no N-function '" + label + "'");
  }
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text,
                                                       std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline std::string member_fingerprint(const nlohmann::json& member) {
  return hex_fingerprint(canonical_dump(member, 0));
}

template <class T>
T param(const nlohmann::json& member, const std::string& label, const char* key) {
  const bool nested = member.contains("params") && member.at("params").contains(key);
  const auto& params = nested ? member.at("params") : member;
  if (!params.contains(key)) {
    throw ValidationError(label, "params", std::string("missing parameter '") + key + "'");
  }
  try {
    return params.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(label, "params", std::string("parameter '") + key + "': " + e.what());
  }
}

inline bool has_param(const nlohmann::json& member, const char* key) {
  return member.contains("params") && member.at("params").contains(key);
}

inline NFunction build_nfunction(const nlohmann::json& m, const std::string& label,
                                 const std::string& kind) {
  try {
    if (kind == "power") {
      const double p = param<double>(m, label, "p");
      if (!(p > 1.0)) throw ValidationError(label, "params", "power needs p > 1");
      return power_nfunction(p, label);
    }
    if (kind == "power_log") {
      const double p = param<double>(m, label, "p");
      if (!(p >= 1.0)) throw ValidationError(label, "params", "power_log needs p >= 1");
      return power_log_nfunction(p, label);
    }
    if (kind == "table") {
      return table_nfunction(param<std::vector<double>>(m, label, "r"),
                             param<std::vector<double>>(m, label, "m"), label);
    }
    if (kind == "constant") return constant_nfunction(param<double>(m, label, "c"), label);
  } catch (const PreconditionError& e) {
    throw ValidationError(label, "params", e.what());
  }
  throw ValidationError(label, "kind", "unknown N-function kind '" + kind + "'");
}

inline NFunctionEntry load_nfunction(const nlohmann::json& m, const GridSpec& grid) {
  NFunctionEntry e;
  e.label = param<std::string>(m, "nfunction", "label");
  e.kind = param<std::string>(m, e.label, "kind");
  e.fingerprint = member_fingerprint(m);
  e.nf = build_nfunction(m, e.label, e.kind);
  const bool pinned = e.nf.exponents_pinned;
  for (const char* key : {"d_exp", "D_exp"}) {
    if (!m.contains(key)) continue;
    const double declared = m.at(key).get<double>();
    auto& slot = std::string(key) == "d_exp" ? e.nf.d_exp : e.nf.D_exp;
    if (pinned && slot && std::abs(*slot - declared) > 1e-12) {
      throw ValidationError(e.label, "declared exponents",
                            std::string(key) + " disagrees with the closed form");
    }
    slot = declared;
  }
  const auto nf = e.nf;
  e.certificate = CertificationCache::instance().get(e.fingerprint, grid.fingerprint(), [&] {
    NFunctionCertificate c;
    try {
      c.growth = certify_growth(nf, grid);
      c.delta2 = certify_delta2(nf, grid);
    } catch (const CertificationError& err) {
      const std::string what = err.what();
      const std::string inv = what.find("nonconstant") != std::string::npos ? "nonconstant"
                              : what.find("monotone") != std::string::npos  ? "monotone"
                                                                             : "positive";
      throw ValidationError(nf.label, inv, what);
    }
    c.convex_increasing = check_convex_increasing(nf, grid.nodes());
    return c;
  });
  const auto& c = e.certificate;
  if (!c.growth.violations.empty()) {
    const auto& v = c.growth.violations.front();
    throw ValidationError(e.label, "declared growth exponents",
                          v.bound + " violated on [" + format_double(v.r1) + "," +
                              format_double(v.r2) + "] with slope " + format_double(v.slope));
  }
  if (c.delta2.divergent) throw ValidationError(e.label, "delta2", c.delta2.reason);
  if (!c.convex_increasing) {
    throw ValidationError(e.label, "convex", "midpoint convexity fails on the grid");
  }
  if (!e.nf.d_exp) e.nf.d_exp = c.growth.d_est;
  if (!e.nf.D_exp) e.nf.D_exp = c.growth.D_est;
  if (!e.nf.delta2_const) e.nf.delta2_const = c.delta2.C_est;
  if (!pinned) e.nf.grid_fingerprint = c.growth.grid_fingerprint;
  return e;
}

inline RadialTestFunction build_radial(const nlohmann::json& m, const std::string& label,
                                       const std::string& kind,
                                       const std::vector<RadialEntry>& earlier) {
  RadialTestFunction f;
  try {
    if (kind == "gaussian_power") {
      f = extremal_function({param<double>(m, label, "alpha"), param<double>(m, label, "p"), 1});
    } else if (kind == "bump") {
      f = bump_function(param<double>(m, label, "center"), param<double>(m, label, "width"),
                        param<int>(m, label, "degree"));
    } else if (kind == "poly_gauss") {
      f = poly_gauss_function(param<std::vector<double>>(m, label, "coefficients"),
                              param<double>(m, label, "rate"));
      if (has_param(m, "declared_derivative")) {
        const auto& d = m.at("params").at("declared_derivative");
        f.du = poly_gauss_function(param<std::vector<double>>(d, label, "coefficients"),
                                   param<double>(d, label, "rate"))
                   .u;
      }
    } else if (kind == "truncated") {
      const auto inner = param<std::string>(m, label, "inner");
      const auto it = std::find_if(earlier.begin(), earlier.end(),
                                   [&](const RadialEntry& e) { return e.label == inner; });
      if (it == earlier.end()) {
        throw ValidationError(label, "params", "inner member '" + inner + "' not declared earlier");
      }
      f = truncate(it->fn, param<double>(m, label, "N"));
    } else if (kind == "zero") {
      f = zero_function();
    } else {
      throw ValidationError(label, "kind", "unknown radial kind '" + kind + "'");
    }
  } catch (const PreconditionError& e) {
    throw ValidationError(label, "params", e.what());
  }
  f.label = label;
  return f;
}

inline RadialProfile build_profile(const nlohmann::json& p, const std::string& label) {
  const auto kind = param<std::string>(p, label, "kind");
  if (kind == "gaussian") return gaussian_profile(param<double>(p, label, "c"));
  if (kind == "cutoff") return cutoff_profile(param<double>(p, label, "r0"), param<double>(p, label, "r1"));
  if (kind == "square") return square_profile();
  throw ValidationError(label, "profile", "unknown profile kind '" + kind + "'");
}

inline FieldEntry load_field(const nlohmann::json& m) {
  FieldEntry e;
  e.label = param<std::string>(m, "field", "label");
  e.kind = param<std::string>(m, e.label, "kind");
  e.fingerprint = member_fingerprint(m);
  e.min_dim = m.value("min_dim", 1);
  const std::string label = e.label;
  try {
    if (e.kind == "monomial_profile") {
      const auto beta = param<std::vector<int>>(m, label, "monomial");
      const auto parts = param<nlohmann::json>(m, label, "profile");
      if (!parts.is_array() || parts.empty()) {
        throw ValidationError(label, "params", "profile must be a non-empty list");
      }
      RadialProfile prof = build_profile(parts[0], label);
      for (std::size_t i = 1; i < parts.size(); ++i) prof = prof * build_profile(parts[i], label);
      int nonzero_dims = 0;
      for (std::size_t i = 0; i < beta.size(); ++i) {
        if (beta[i] != 0) nonzero_dims = static_cast<int>(i) + 1;
      }
      e.min_dim = std::max(e.min_dim, nonzero_dims);
      e.make = [label, beta, prof](int n) { return monomial_profile_field(label, n, beta, prof); };
    } else if (e.kind == "shifted_gaussian") {
      const auto center = param<std::vector<double>>(m, label, "center");
      const double width = param<double>(m, label, "width");
      e.min_dim = std::max(e.min_dim, static_cast<int>(center.size()));
      e.make = [label, center, width](int n) {
        auto c = center;
        c.resize(static_cast<std::size_t>(n), 0.0);
        return shifted_gaussian_field(label, c, width);
      };
    } else {
      throw ValidationError(label, "kind", "unknown field kind '" + e.kind + "'");
    }
  } catch (const PreconditionError& err) {
    throw ValidationError(label, "params", err.what());
  }
  for (int n = e.min_dim; n <= std::max(3, e.min_dim); ++n) {
    const auto v = validate_field(e.make(n));
    if (!v.ok) throw ValidationError(label, "gradient consistency", v.reason);
  }
  return e;
}

}  // namespace detail

/// Parses and validates a manifest held in memory.
inline CorpusManifest parse_manifest(const std::string& text, const std::string& source = "<memory>",
                                     const GridSpec& grid = default_certification_grid()) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = detail::line_column(text, e.byte);
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                         e.what(),
                     line, col);
  }
  if (!doc.is_object()) throw ValidationError("manifest", "structure", "top level must be an object");
  if (!doc.contains("schema_version")) {
    throw ValidationError("manifest", "schema_version", "required field missing");
  }
  CorpusManifest out;
  out.schema_version = doc.at("schema_version").get<int>();
  if (out.schema_version != kManifestSchemaVersion) {
    throw ValidationError("manifest", "schema_version",
                          "unsupported version " + std::to_string(out.schema_version));
  }
  out.source = source;
  out.grid = grid;
  out.fingerprint = hex_fingerprint(canonical_dump(doc, 0));
  std::set<std::string> seen;
  auto unique = [&](const std::string& label) {
    if (!seen.insert(label).second) throw ValidationError(label, "unique label", "declared twice");
  };
  auto list = [&](const char* key) {
    if (!doc.contains(key)) return nlohmann::json::array();
    if (!doc.at(key).is_array()) throw ValidationError("manifest", key, "must be a list");
    return doc.at(key);
  };
  for (const auto& m : list("nfunctions")) {
    out.nfunctions.push_back(detail::load_nfunction(m, grid));
    unique(out.nfunctions.back().label);
  }
  for (const auto& m : list("radial_functions")) {
    RadialEntry e;
    e.label = detail::param<std::string>(m, "radial", "label");
    e.kind = detail::param<std::string>(m, e.label, "kind");
    unique(e.label);
    e.fingerprint = detail::member_fingerprint(m);
    e.fn = detail::build_radial(m, e.label, e.kind, out.radial_functions);
    e.validation = validate_radial(e.fn);
    if (!e.validation.ok) {
      throw ValidationError(e.label,
                            e.validation.max_jump > 1e-6 ? "continuity" : "derivative consistency",
                            e.validation.reason + "; max deviation " +
                                format_double(e.validation.max_derivative_deviation));
    }
    out.radial_functions.push_back(std::move(e));
  }
  for (const auto& m : list("field_functions")) {
    out.field_functions.push_back(detail::load_field(m));
    unique(out.field_functions.back().label);
  }
  return out;
}

inline CorpusManifest load_manifest(const std::string& path,
                                    const GridSpec& grid = default_certification_grid()) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open manifest '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str(), path, grid);
}

}  // namespace orlicz
