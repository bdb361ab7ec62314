#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "orlicz/fields.hpp"
#include "orlicz/functionals.hpp"
#include "orlicz/sharpness.hpp"

using namespace orlicz;

namespace {

std::vector<RadialTestFunction> radial_corpus() {
  return {bump_function(1.0, 0.5, 2), bump_function(0.0, 1.5, 1),
          poly_gauss_function({1.0, 0.0, 1.0}, 1.0), poly_gauss_function({0.0, 1.0, 0.0, -0.25}, 0.5),
          profile_function(gaussian_profile(0.5)), extremal_function({0.5, 2.0, 1})};
}

std::vector<NFunction> nf_corpus() {
  return {power_nfunction(2.0), power_nfunction(3.0), power_log_nfunction(2.0)};
}

double modular(const RadialTestFunction& f, const NFunction& nf, int n) {
  return modular_triple_radial(f, nf, n).L;
}

}  // namespace

TEST(ModularTriple, Zero) {
  const auto t = modular_triple_radial(zero_function(), power_nfunction(3.0), 2);
  EXPECT_EQ(t.K, 0.0);
  EXPECT_EQ(t.L, 0.0);
  EXPECT_EQ(t.G, 0.0);
  EXPECT_TRUE(t.valid());
  const auto z = modular_triple_nd(zero_field(3), power_nfunction(3.0));
  EXPECT_EQ(z.K + z.L + z.G, 0.0);
}

TEST(ModularTriple, ConstantOneViaMoments) {
  const auto t = modular_triple_radial(extremal_function({0.0, 2.0, 2}), power_nfunction(2.0), 2);
  EXPECT_NEAR(t.K, oracle::moment(2, 2), 1e-10);
  EXPECT_NEAR(t.L, oracle::moment(2, 0), 1e-10);
  EXPECT_EQ(t.G, 0.0);
}

TEST(ModularTriple, GrowingGaussianMatchesGammaForms) {
  // u = e^{0.45 r²/2} = exp(α r²/(2p)) with α = 0.9, p = 2
  RadialTestFunction u;
  u.label = "e^{0.45 r^2/2}";
  u.u = [](double r) { return std::exp(0.225 * r * r); };
  u.du = [](double r) { return 0.45 * r * std::exp(0.225 * r * r); };
  u.support = SupportHint::decaying(0.0, -0.45);
  const auto t = modular_triple_radial(u, power_nfunction(2.0), 1);
  const double a = 0.9, p = 2.0, n = 1.0;
  const double K = std::pow(1 - a, -(n + p) / 2) * std::pow(2.0, (n + p - 2) / 2) * std::tgamma((n + p) / 2);
  const double L = std::pow(1 - a, -n / 2) * std::pow(2.0, (n - 2) / 2) * std::tgamma(n / 2);
  const double G = std::pow(a / p, p) * K;
  EXPECT_NEAR(t.K / K, 1.0, 1e-8);
  EXPECT_NEAR(t.L / L, 1.0, 1e-8);
  EXPECT_NEAR(t.G / G, 1.0, 1e-8);
}

TEST(ModularTriple, DivergenceIsFlagged) {
  const auto t = modular_triple_radial(extremal_function({0.9, 2.0, 1}), power_nfunction(3.0), 1);
  EXPECT_TRUE(t.any_divergent());
  EXPECT_FALSE(t.valid());
}

TEST(ModularTriple, PowerLogOnFastGrowthStaysFinite) {
  // M(u) ~ e^{0.45 r²} r², integrable against e^{-r²/2}
  const auto f = extremal_function({0.9, 2.0, 1});
  const auto nf = power_log_nfunction(2.0);
  const auto t = modular_triple_radial(f, nf, 1);
  ASSERT_TRUE(t.valid());
  // M(u) e^{-r²/2} = e^{-0.05 r²} (x + log1p(e^{-x})), x = 0.225 r²
  const double ref = oracle::simpson(
      [](double r) {
        const double x = 0.225 * r * r;
        return std::exp(-0.05 * r * r) * (x + std::log1p(std::exp(-x)));
      },
      0.0, 40.0, 800000);
  EXPECT_NEAR(t.L / ref, 1.0, 1e-6);
}

TEST(ModularTriple, RadialCorpusAgainstSimpson) {
  for (const auto& f : radial_corpus()) {
    for (const auto& nf : nf_corpus()) {
      const auto t = modular_triple_radial(f, nf, 2);
      if (!t.valid()) continue;
      const double K = oracle::radial([&](double r) { return nf.eval(r * std::abs(f.u(r))); }, 2);
      const double L = oracle::radial([&](double r) { return nf.eval(std::abs(f.u(r))); }, 2);
      EXPECT_NEAR(t.K / K, 1.0, 1e-7) << f.label << " " << nf.label;
      EXPECT_NEAR(t.L / L, 1.0, 1e-7) << f.label << " " << nf.label;
    }
  }
}

TEST(ModularTripleNd, RadialFieldMatchesRadialTriple) {
  const auto prof = gaussian_profile(0.5);
  for (int n : {1, 2, 3}) {
    const auto field = monomial_profile_field("g", n, {}, prof);
    for (const auto& nf : nf_corpus()) {
      const auto a = modular_triple_nd(field, nf);
      const auto b = modular_triple_radial(profile_function(prof), nf, n).scaled(sphere_area(n));
      EXPECT_NEAR(a.K / b.K, 1.0, 1e-9) << n << nf.label;
      EXPECT_NEAR(a.L / b.L, 1.0, 1e-9) << n << nf.label;
      EXPECT_NEAR(a.G / b.G, 1.0, 1e-9) << n << nf.label;
    }
  }
}

TEST(ModularTripleNd, QuarterGaussianInThePlane) {
  // u = e^{-|x|²/4}: L = ∫e^{-|x|²} = π, K = ∫|x|² e^{-|x|²} = π, G = ∫|x|²/4 e^{-|x|²} = π/4
  const auto field = monomial_profile_field("q", 2, {}, gaussian_profile(0.5));
  const auto t = modular_triple_nd(field, power_nfunction(2.0));
  EXPECT_NEAR(t.L, std::numbers::pi, 1e-8 * std::numbers::pi);
  EXPECT_NEAR(t.K, std::numbers::pi, 1e-8 * std::numbers::pi);
  EXPECT_NEAR(t.G, std::numbers::pi / 4, 1e-8 * std::numbers::pi);
}

TEST(ModularTripleNd, NeedsGradient) {
  auto f = zero_field(2);
  f.grad = nullptr;
  EXPECT_THROW(modular_triple_nd(f, power_nfunction(2.0)), PreconditionError);
}

TEST(Luxemburg, Examples) {
  RadialTestFunction one = extremal_function({0.0, 2.0, 1});
  EXPECT_NEAR(luxemburg_norm_radial(one.u, power_nfunction(2.0), 1, {}),
              std::pow(std::numbers::pi / 2, 0.25), 1e-9);
  EXPECT_NEAR(luxemburg_norm_radial(one.u, power_nfunction(2.0), 1, {}), 1.1195151, 1e-7);
  EXPECT_EQ(luxemburg_norm_radial([](double) { return 0.0; }, power_nfunction(2.0), 1, {}), 0.0);
}

TEST(Luxemburg, PowerNormIsLpNorm) {
  for (const auto& f : radial_corpus()) {
    for (double p : {2.0, 3.0}) {
      const double ref = std::pow(
          oracle::radial([&](double r) { return std::pow(std::abs(f.u(r)), p); }, 1), 1.0 / p);
      const double v = luxemburg_norm_radial(f.u, power_nfunction(p), 1, {}, f.support, f.breakpoints);
      EXPECT_NEAR(v / ref, 1.0, 1e-8) << f.label << " p=" << p;
    }
  }
}

TEST(Luxemburg, NormModularBoundHomogeneityAndSaturation) {
  for (const auto& f : radial_corpus()) {
    for (const auto& nf : nf_corpus()) {
      for (int n : {1, 3}) {
        const double m = modular(f, nf, n);
        if (!std::isfinite(m)) continue;
        const double norm = luxemburg_norm_radial(f.u, nf, n, {}, f.support, f.breakpoints);
        EXPECT_LE(norm, m + 1.0 + 1e-8) << f.label << nf.label << n;
        for (double c : {0.1, 2.0, 17.0}) {
          const double nc = luxemburg_norm_radial([&](double r) { return c * f.u(r); }, nf, n, {},
                                                  f.support, f.breakpoints);
          EXPECT_NEAR(nc / (c * norm), 1.0, 1e-8) << f.label << nf.label << c;
        }
        RadialTestFunction g = f;
        g.u = [&](double r) { return f.u(r) / norm; };
        g.du = [&](double r) { return f.du(r) / norm; };
        const double shift = std::log(norm);
        if (f.log_abs_u) g.log_abs_u = [&](double r) { return f.log_abs_u(r) - shift; };
        if (f.log_abs_du) g.log_abs_du = [&](double r) { return f.log_abs_du(r) - shift; };
        EXPECT_NEAR(modular(g, nf, n), 1.0, 1e-8) << f.label << nf.label;
      }
    }
  }
}

TEST(Luxemburg, DivergenceBeyondScalingRange) {
  auto modular_fn = [](double) { return INFINITY; };
  EXPECT_THROW(luxemburg_from_modular(modular_fn), DivergenceError);
}

TEST(Truncate, Examples) {
  const auto one = extremal_function({0.0, 2.0, 1});
  const auto t = truncate(one, 1.0);
  EXPECT_DOUBLE_EQ(t.u(1.5), 0.5);
  EXPECT_DOUBLE_EQ(t.du(1.5), -1.0);
  EXPECT_EQ(t.u(2.5), 0.0);
  EXPECT_EQ(t.u(0.7), 1.0);
  EXPECT_NE(std::find(t.breakpoints.begin(), t.breakpoints.end(), 1.0), t.breakpoints.end());
  EXPECT_NE(std::find(t.breakpoints.begin(), t.breakpoints.end(), 2.0), t.breakpoints.end());
  EXPECT_THROW(truncate(one, 0.5), PreconditionError);
  EXPECT_TRUE(validate_radial(t).ok);
}

TEST(Truncate, PointwiseConvergence) {
  const auto f = poly_gauss_function({1.0, 0.0, 1.0}, 1.0);
  for (double r : {0.3, 2.0, 7.0}) {
    double prev = INFINITY;
    for (double N : {1.0, 2.0, 4.0, 8.0, 16.0}) {
      const double e = std::abs(truncate(f, N).u(r) - f.u(r));
      EXPECT_LE(e, prev);
      prev = e;
    }
    EXPECT_EQ(prev, 0.0);
  }
}

TEST(Truncate, ModularMonotoneConvergence) {
  const auto f = extremal_function({0.5, 2.0, 1});
  const auto nf = power_nfunction(3.0);
  const double K = modular_triple_radial(f, nf, 2).K;
  double prev = 0.0;
  for (double N : {2.0, 4.0, 8.0, 16.0}) {
    const double KN = modular_triple_radial(truncate(f, N), nf, 2).K;
    EXPECT_GE(KN, prev * (1 - 1e-10));
    EXPECT_LE(KN, K * (1 + 1e-9));
    prev = KN;
  }
  EXPECT_NEAR(prev / K, 1.0, 1e-8);
}

TEST(Truncate, DerivativeSplitBound) {
  for (const auto& f : radial_corpus()) {
    for (const auto& nf : nf_corpus()) {
      const auto base = modular_triple_radial(f, nf, 2);
      if (!base.valid()) continue;
      const double D = *nf.D_exp;
      for (double N : {1.0, 2.0, 4.0, 9.0}) {
        const auto t = modular_triple_radial(truncate(f, N), nf, 2);
        const double bound = std::pow(1 + 1 / std::sqrt(N), D) * base.G +
                             std::pow(2 / std::sqrt(N), D) * base.L;
        EXPECT_LE(t.G, bound + t.err_G + base.err_G + base.err_L + 1e-12) << f.label << nf.label << N;
      }
    }
  }
}

TEST(Validation, RadialDetectsBadDerivativeAndJump) {
  auto f = poly_gauss_function({1.0, 1.0}, 1.0);
  EXPECT_TRUE(validate_radial(f).ok);
  f.du = [](double r) { return r; };
  const auto v = validate_radial(f);
  EXPECT_FALSE(v.ok);
  EXPECT_GT(v.max_derivative_deviation, 1e-6);
  RadialTestFunction step;
  step.u = [](double r) { return r < 1 ? 1.0 : 0.0; };
  step.du = [](double) { return 0.0; };
  step.breakpoints = {1.0};
  step.support = SupportHint::compact(2.0);
  EXPECT_FALSE(validate_radial(step).ok);
}

TEST(Validation, DefaultFieldCorpus) {
  for (int n : {1, 2, 3}) {
    for (const auto& f : default_field_corpus(n)) EXPECT_TRUE(validate_field(f).ok) << f.label << n;
  }
}

TEST(HilbertSchmidt, TransposeIsBitIdentical) {
  const std::vector<double> a{1.0, 2e-17, 3.3, -4.0, 5.5, 1e8, 7.0, 0.1, -9.0};
  const std::vector<double> at{1.0, -4.0, 7.0, 2e-17, 5.5, 0.1, 3.3, 1e8, -9.0};
  EXPECT_EQ(hilbert_schmidt_norm(a, 3), hilbert_schmidt_norm(at, 3));
  double s = 0;
  for (double v : a) s += v * v;
  EXPECT_NEAR(hilbert_schmidt_norm(a, 3), std::sqrt(s), 1e-16 * std::sqrt(s));
}
