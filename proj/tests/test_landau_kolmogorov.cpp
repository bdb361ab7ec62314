#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "orlicz/fields.hpp"
#include "orlicz/landau_kolmogorov.hpp"

using namespace orlicz;

namespace {

FieldFunction gauss1(double c) { return monomial_profile_field("gauss", 1, {}, gaussian_profile(c)); }

std::vector<FitSample> corpus_samples(int n, const NFunction& nf) {
  std::vector<FitSample> out;
  for (const auto& u : default_field_corpus(n)) {
    out.push_back(modular_sample(u.label, lk_modulars(u, nf, 1.0)));
  }
  return out;
}

}  // namespace

TEST(LKModulars, OneDimensionalGaussianAgainstOracle) {
  const double s2pi = std::sqrt(2 * std::numbers::pi);
  for (double c : {0.5, 1.0, 2.0}) {
    const auto m = lk_modulars(gauss1(c), power_nfunction(2.0), 1.0);
    const double a = 2 * c + 1;
    EXPECT_NEAR(m.G / (c * c * s2pi * std::pow(a, -1.5)), 1.0, 1e-9) << c;
    EXPECT_NEAR(m.U / (s2pi / std::sqrt(a)), 1.0, 1e-9) << c;
    const double H = oracle::simpson(
        [&](double x) {
          const double h = (c * c * x * x - c) * std::exp(-0.5 * c * x * x);
          return h * h * std::exp(-0.5 * x * x);
        },
        -30.0, 30.0, 200000);
    EXPECT_NEAR(m.H / H, 1.0, 1e-9) << c;
  }
}

TEST(LKModulars, ThetaScalingForSquare) {
  const auto u = monomial_profile_field("x1_gauss", 2, {1}, gaussian_profile(0.5));
  const auto nf = power_nfunction(2.0);
  const auto one = lk_modulars(u, nf, 1.0);
  for (double theta : {0.25, 0.5}) {
    const auto m = lk_modulars(u, nf, theta);
    EXPECT_NEAR(m.G / one.G, 1.0, 1e-12);
    EXPECT_NEAR(m.H / (theta * theta * one.H), 1.0, 1e-9);
    EXPECT_NEAR(m.U / (one.U / (theta * theta)), 1.0, 1e-9);
  }
}

TEST(LKModulars, ZeroFieldHolds) {
  for (int n : {1, 2, 3}) {
    const auto r = check_lk_modular(zero_field(n), power_nfunction(3.0), 0.0, 0.0);
    EXPECT_EQ(r.lhs, 0.0);
    EXPECT_EQ(r.verdict, Verdict::holds);
    const auto v = check_lk_norm(zero_field(n), power_nfunction(3.0), 0.0, 0.0);
    EXPECT_EQ(v.verdict, Verdict::holds);
  }
}

TEST(LKModulars, Hypotheses) {
  EXPECT_THROW(lk_modulars(gauss1(1.0), power_nfunction(1.5), 1.0), HypothesisError);
  auto u = gauss1(1.0);
  u.hess = nullptr;
  EXPECT_THROW(lk_modulars(u, power_nfunction(2.0), 1.0), PreconditionError);
  EXPECT_THROW(lk_modulars(gauss1(1.0), power_nfunction(2.0), 0.0), PreconditionError);
  EXPECT_THROW(lk_modulars(gauss1(1.0), power_nfunction(2.0), 1.5), PreconditionError);
}

TEST(LKModulars, InfiniteGradientWithFiniteRightSideFails) {
  LKModulars m;
  m.G = std::numeric_limits<double>::infinity();
  m.H = 1.0;
  m.U = 1.0;
  const auto r = lk_modular_report(m, 10.0, 10.0);
  EXPECT_EQ(r.verdict, Verdict::fails);
  EXPECT_FALSE(r.note.empty());
}

TEST(FieldCorpus, HessianMatchesGradientDifferences) {
  for (int n : {1, 2, 3}) {
    for (const auto& u : default_field_corpus(n)) {
      std::vector<double> x(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) x[i] = 0.3 + 0.41 * i;
      const auto h = u.hess(x);
      const double step = 1e-5;
      for (int k = 0; k < n; ++k) {
        auto xp = x, xm = x;
        xp[k] += step;
        xm[k] -= step;
        const auto gp = u.grad(xp), gm = u.grad(xm);
        for (int i = 0; i < n; ++i) {
          EXPECT_NEAR(h[i * n + k], (gp[i] - gm[i]) / (2 * step), 1e-6) << u.label << " n=" << n;
          EXPECT_EQ(h[i * n + k], h[k * n + i]);
        }
      }
    }
  }
}

TEST(FitConstants, HandComputedExample) {
  // lhs <= C1 a + C2 b: (2, 1, 1) and (1, 0, 1)
  const std::vector<FitSample> s{{"a", 2.0, 1.0, 1.0}, {"b", 1.0, 0.0, 1.0}};
  const auto f = fit_constants(s, {0.0, 1.0, 2.0, 3.0});
  // C2(0) = 2, C2(1) = 1, C2(2) = 1, C2(3) = 1
  ASSERT_EQ(f.envelope.size(), 4u);
  EXPECT_EQ(f.envelope[0].second, 2.0);
  EXPECT_EQ(f.envelope[1].second, 1.0);
  EXPECT_EQ(f.envelope[3].second, 1.0);
  EXPECT_EQ(f.C1 + f.C2, 2.0);
  EXPECT_EQ(f.C1, 0.0);
  EXPECT_THROW(fit_constants(s, {}), PreconditionError);
}

TEST(FitConstants, UnionEnvelopeIsPointwiseLarger) {
  const auto nf = power_nfunction(3.0);
  const auto all = corpus_samples(2, nf);
  const std::vector<FitSample> half(all.begin(), all.begin() + static_cast<long>(all.size() / 2));
  const auto grid = default_fit_grid();
  const auto a = fit_constants(half, grid), b = fit_constants(all, grid);
  ASSERT_EQ(a.envelope.size(), b.envelope.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_LE(a.envelope[i].second, b.envelope[i].second);
  }
  EXPECT_LE(a.C1 + a.C2, b.C1 + b.C2);
}

TEST(FitConstants, InvariantUnderScalingOfSamples) {
  const auto s = corpus_samples(1, power_nfunction(2.0));
  auto scaled = s;
  for (auto& x : scaled) {
    x.lhs *= 8.0;
    x.a *= 8.0;
    x.b *= 8.0;
  }
  const auto a = fit_constants(s, default_fit_grid());
  const auto b = fit_constants(scaled, default_fit_grid());
  EXPECT_EQ(a.C1, b.C1);
  EXPECT_NEAR(a.C2, b.C2, 1e-12 * a.C2);
  EXPECT_EQ(a.binding, b.binding);
}

TEST(FitConstants, FittedConstantsHoldOnTheirCorpus) {
  for (int n : {1, 2}) {
    for (const auto& nf : {power_nfunction(2.0), power_nfunction(3.0)}) {
      const auto fit = fit_constants(corpus_samples(n, nf), default_fit_grid());
      ASSERT_TRUE(fit.finite());
      for (const auto& u : default_field_corpus(n)) {
        const auto r = check_lk_modular(u, nf, fit.C1, fit.C2, 1.0);
        EXPECT_NE(r.verdict, Verdict::fails) << u.label << " " << nf.label;
      }
    }
  }
}

TEST(FitConstants, NormFitHoldsOnItsCorpus) {
  const auto nf = power_nfunction(2.0);
  std::vector<FitSample> s;
  std::vector<LKNorms> norms;
  const auto corpus = default_field_corpus(2);
  for (const auto& u : corpus) {
    norms.push_back(lk_norms(u, nf));
    s.push_back(norm_sample(u.label, norms.back()));
  }
  const auto fit = fit_constants(s, default_fit_grid());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    EXPECT_NE(lk_norm_report(norms[i], fit.C1, fit.C2).verdict, Verdict::fails) << corpus[i].label;
  }
}

TEST(HardyChain, SquareNFunction) {
  const auto nf = power_nfunction(2.0);
  const auto u = monomial_profile_field("gauss_quarter", 2, {}, gaussian_profile(0.5));
  const auto fit = fit_constants(corpus_samples(2, nf), default_fit_grid());
  const auto r = additive_lk_from_hardy(u, nf, fit.C1, fit.C2, {}, "gauss_quarter", "fitted");
  EXPECT_EQ(r.verdict, Verdict::holds);
  EXPECT_NE(r.note.find("chain"), std::string::npos);
  EXPECT_GE(r.terms.at("hardy_slack"), 0.0);
  EXPECT_TRUE(r.constants_used.count("hardy_C1"));
}
