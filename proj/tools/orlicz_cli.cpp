// orlicz: command-line front end for the verification suites.

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orlicz/corpus.hpp"
#include "orlicz/mazya.hpp"
#include "orlicz/report.hpp"
#include "orlicz/runner.hpp"

namespace fs = std::filesystem;
using namespace orlicz;

namespace {

struct Common {
  std::string corpus = ORLICZ_DEFAULT_MANIFEST;
  std::string dims = "1..3";
  std::string out;
  std::string report;
  std::string normalization = "unnormalized";
  std::optional<std::uint64_t> seed;
  double rel_tol = 1e-10;
  int sphere_nodes = 32;
};

/// "2", "1..3" or "1,2,5".
std::vector<int> parse_dims(const std::string& s) {
  std::vector<int> out;
  if (const auto pos = s.find(".."); pos != std::string::npos) {
    const int lo = std::stoi(s.substr(0, pos)), hi = std::stoi(s.substr(pos + 2));
    if (lo < 1 || hi < lo) throw CLI::ValidationError("--dim", "bad range " + s);
    for (int n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  }
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const int n = std::stoi(item);
    if (n < 1) throw CLI::ValidationError("--dim", "dimensions must be >= 1");
    out.push_back(n);
  }
  return out;
}

/// "a,b,c" or "lo:hi:count" (log-spaced).
std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> out;
  if (std::count(s.begin(), s.end(), ':') == 2) {
    const auto a = s.find(':'), b = s.rfind(':');
    return logspace(std::stod(s.substr(0, a)), std::stod(s.substr(a + 1, b - a - 1)),
                    std::stoi(s.substr(b + 1)));
  }
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

void add_common(CLI::App* app, Common& c, bool with_corpus = true) {
  if (with_corpus) app->add_option("--corpus", c.corpus, "Corpus manifest (JSON)");
  app->add_option("--dim", c.dims, "Dimensions: n, lo..hi or a,b,c");
  app->add_option("--out", c.out, "Directory for report.json and CSV series");
  app->add_option("--report", c.report, "Path of the JSON report (default: stdout)");
  app->add_option("--seed", c.seed, "Angular sampling seed (ORLICZ_SEED overrides)");
  app->add_option("--rel-tol", c.rel_tol, "Quadrature relative tolerance");
  app->add_option("--sphere-nodes", c.sphere_nodes, "Directions for n-d integrals");
  app->add_option("--normalization", c.normalization, "Gaussian measure scaling")
      ->check(CLI::IsMember({"unnormalized", "probability"}));
}

RunOptions options_from(const Common& c) {
  RunOptions opt;
  opt.dims = parse_dims(c.dims);
  opt.spec.rel_tol = c.rel_tol;
  opt.spec.sphere_nodes = c.sphere_nodes;
  opt.spec.normalization =
      c.normalization == "probability" ? Normalization::probability : Normalization::unnormalized;
  if (c.seed) opt.spec.seed = *c.seed;
  if (const char* env = std::getenv("ORLICZ_SEED")) opt.spec.seed = std::stoull(env);
  opt.spec.validate();
  return opt;
}

std::string file_name(const std::string& name) {
  std::string out;
  for (char ch : name) {
    out += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' || ch == '-' || ch == '_')
               ? ch
               : '_';
  }
  return out;
}

int emit(RunReport rep, const Common& c) {
  rep.finalize();
  const std::string text = canonical_dump(to_json(rep));
  std::string report_path = c.report;
  if (!c.out.empty()) {
    fs::create_directories(c.out);
    if (report_path.empty()) report_path = (fs::path(c.out) / "report.json").string();
    for (const auto& s : rep.series) {
      const auto path = fs::path(c.out) / (file_name(s.name) + ".csv");
      std::ofstream f(path);
      if (!f) throw std::runtime_error("cannot write " + path.string());
      f << to_csv(s);
    }
  }
  if (report_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(report_path);
    if (!f) throw std::runtime_error("cannot write " + report_path);
    f << text;
  }
  const auto s = rep.summary();
  std::cerr << rep.suite << ": holds=" << s.holds << " fails=" << s.fails
            << " indeterminate=" << s.indeterminate << " trivial=" << s.trivial
            << " skipped=" << rep.skipped.size() << "\n";
  return rep.exit_code();
}

MeasurePair pair_from_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open pair config '" + path + "'");
  const auto j = nlohmann::json::parse(in);
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "classical") return classical_hardy_pair();
  if (kind == "gaussian") return gaussian_measure_pair(j.at("p").get<double>(), j.at("n").get<int>());
  if (kind == "table") {
    auto m = table_measure_pair(j.at("x").get<std::vector<double>>(),
                                j.at("mu_tail").get<std::vector<double>>(),
                                j.at("nu_density").get<std::vector<double>>(),
                                j.at("p").get<double>(), j.at("q").get<double>(),
                                j.value("a", 0.0));
    if (j.contains("label")) m.label = j.at("label").get<std::string>();
    return m;
  }
  throw PreconditionError("unknown measure-pair kind '" + kind + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of Orlicz-space Hardy and Landau-Kolmogorov inequalities "
               "under Gaussian measures"};
  app.set_version_flag("--version", ORLICZ_VERSION);
  app.require_subcommand(1);

  Common hc, sc, mc, lc, cc, ac;
  std::optional<std::string> nfunc_h, form_h, nfunc_l, nfunc_c;

  auto* hardy = app.add_subcommand("hardy", "Hardy-type inequalities over the corpus");
  add_common(hardy, hc);
  hardy->add_option("--nfunc", nfunc_h, "Restrict to one N-function label");
  hardy->add_option("--form", form_h, "Restrict to one inequality id");

  auto* sharp = app.add_subcommand("sharpness", "Extremal family and constant sharpness");
  add_common(sharp, sc, false);
  std::vector<double> sharp_p;
  std::optional<std::string> sharp_n, alpha_grid;
  sharp->add_option("--p", sharp_p, "Power exponent(s)");
  sharp->add_option("--n", sharp_n, "Dimension(s); same syntax as --dim");
  sharp->add_option("--alpha-grid", alpha_grid, "Increasing alphas in [0,1)");

  auto* maz = app.add_subcommand("mazya", "Maz'ya constant B and the Gaussian p>n criterion");
  add_common(maz, mc, false);
  bool maz_gauss = false, maz_classical = false, no_transform = false;
  double maz_p = 2.0;
  int maz_n = 1;
  std::string pair_cfg;
  maz->add_flag("--gaussian", maz_gauss, "Gaussian pair dμ = r^p dμ_n, dν = dμ_n");
  maz->add_flag("--classical", maz_classical, "Classical pair dμ = x^-2 dx, dν = dx");
  maz->add_option("--pair", pair_cfg, "Measure-pair config (kinds: classical, gaussian, table)");
  maz->add_option("--p", maz_p, "Exponent p = q for --gaussian");
  maz->add_option("--n", maz_n, "Dimension for --gaussian");
  maz->add_flag("--no-transform", no_transform, "Skip the transform checks");

  auto* lk = app.add_subcommand("lk", "Landau-Kolmogorov inequalities with fitted constants");
  add_common(lk, lc);
  std::optional<std::string> theta_grid, fit_grid;
  lk->add_option("--theta-grid", theta_grid, "Thetas in (0,1], e.g. 0.25,0.5,1");
  lk->add_option("--fit-grid", fit_grid, "C1 grid: list or lo:hi:count");
  lk->add_option("--nfunc", nfunc_l, "Restrict to one N-function label");

  auto* cert = app.add_subcommand("certify", "Growth, doubling and pointwise lemma certification");
  add_common(cert, cc);
  cert->add_option("--nfunc", nfunc_c, "Restrict to one N-function label");

  auto* all = app.add_subcommand("all", "Every suite");
  add_common(all, ac);

  CLI11_PARSE(app, argc, argv);

  try {
    if (hardy->parsed()) {
      auto opt = options_from(hc);
      opt.nfunc = nfunc_h;
      opt.form = form_h;
      return emit(run_hardy(load_manifest(hc.corpus), opt), hc);
    }
    if (sharp->parsed()) {
      auto opt = options_from(sc);
      if (!sharp_p.empty()) opt.sharpness_p = sharp_p;
      if (sharp_n) opt.dims = parse_dims(*sharp_n);
      if (alpha_grid) opt.alpha_grid = parse_grid(*alpha_grid);
      return emit(run_sharpness(opt), sc);
    }
    if (maz->parsed()) {
      auto opt = options_from(mc);
      if (maz_gauss) return emit(run_mazya_gaussian(maz_p, maz_n, opt, !no_transform), mc);
      if (maz_classical) return emit(run_mazya_pair(classical_hardy_pair(), opt, !no_transform), mc);
      if (!pair_cfg.empty()) return emit(run_mazya_pair(pair_from_config(pair_cfg), opt, !no_transform), mc);
      return emit(run_mazya(opt), mc);
    }
    if (lk->parsed()) {
      auto opt = options_from(lc);
      if (theta_grid) opt.theta_grid = parse_grid(*theta_grid);
      if (fit_grid) opt.fit_grid = parse_grid(*fit_grid);
      opt.nfunc = nfunc_l;
      return emit(run_lk(load_manifest(lc.corpus), opt), lc);
    }
    if (cert->parsed()) {
      auto opt = options_from(cc);
      opt.nfunc = nfunc_c;
      return emit(run_certify(load_manifest(cc.corpus), opt), cc);
    }
    if (all->parsed()) {
      auto opt = options_from(ac);
      return emit(run_all(load_manifest(ac.corpus), opt), ac);
    }
  } catch (const ParseError& e) {
    std::cerr << "manifest parse error (line " << e.line() << "): " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "manifest validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
