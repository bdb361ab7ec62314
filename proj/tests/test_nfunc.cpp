#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "orlicz/nfunc.hpp"

using namespace orlicz;

namespace {

std::vector<NFunction> lemma_corpus() {
  return {power_nfunction(2.5), power_nfunction(3.0), power_nfunction(4.0),
          power_log_nfunction(2.0)};
}

}  // namespace

TEST(CertifyGrowth, PowerExponentsAreExact) {
  for (double p : {2.0, 2.5, 3.0, 4.0, 7.0}) {
    const auto c = certify_growth(power_nfunction(p), default_certification_grid());
    EXPECT_NEAR(c.d_est, p, 1e-9) << p;
    EXPECT_NEAR(c.D_est, p, 1e-9) << p;
    EXPECT_TRUE(c.violations.empty());
  }
}

TEST(CertifyGrowth, PowerLogBoundsHoldOnDenseGrid) {
  const auto nf = power_log_nfunction(2.0);
  const auto c = certify_growth(nf, default_certification_grid());
  EXPECT_TRUE(c.violations.empty());
  EXPECT_NEAR(c.D_est, 3.0, 1e-6);
  EXPECT_GE(c.d_est, 2.0);

  // log(1+ar) <= a log(1+r) for a >= 1 gives the upper bound,
  // log(1+r/a) <= log(1+r) the lower one.
  const auto rs = oracle::logspace(1e-4, 1e4, 300);
  const auto as = oracle::logspace(1.0001, 1e3, 60);
  auto M = [](double r) { return r * r * std::log1p(r); };
  for (double r : rs) {
    for (double a : as) {
      EXPECT_LE(M(a * r), std::pow(a, 3.0) * M(r) * (1 + 1e-12));
      EXPECT_LE(M(r / a), std::pow(1.0 / a, 2.0) * M(r) * (1 + 1e-12));
    }
  }
}

TEST(CertifyGrowth, DeclaredExponentViolationIsReported) {
  auto nf = power_nfunction(3.0);
  nf.D_exp = 2.5;
  const auto c = certify_growth(nf, {1e-2, 1e2, 50, GridScale::log});
  ASSERT_FALSE(c.violations.empty());
  EXPECT_EQ(c.violations.front().bound, "D_M");
}

TEST(CertifyGrowth, ConstantIsRejected) {
  EXPECT_THROW(certify_growth(constant_nfunction(1.0), default_certification_grid()),
               CertificationError);
  try {
    certify_growth(constant_nfunction(2.0), default_certification_grid());
  } catch (const CertificationError& e) {
    EXPECT_NE(std::string(e.what()).find("nonconstant"), std::string::npos);
  }
}

TEST(CertifyGrowth, NonMonotoneNamesNode) {
  NFunction nf;
  nf.label = "dip";
  nf.eval = [](double r) { return r > 1.0 && r < 2.0 ? 0.5 : r * r; };
  try {
    certify_growth(nf, {0.5, 4.0, 40, GridScale::linear});
    FAIL();
  } catch (const CertificationError& e) {
    EXPECT_GT(e.node(), 1.0);
    EXPECT_LT(e.node(), 2.0);
  }
}

TEST(CertifyDelta2, Powers) {
  EXPECT_NEAR(certify_delta2(power_nfunction(3.0), default_certification_grid()).C_est, 8.0, 1e-12);
  EXPECT_NEAR(certify_delta2(power_nfunction(2.0), default_certification_grid()).C_est, 4.0, 1e-12);
  EXPECT_FALSE(certify_delta2(power_nfunction(2.0), default_certification_grid()).divergent);
}

TEST(CertifyDelta2, ExponentialDiverges) {
  const auto c = certify_delta2(exp_nfunction(), {1e-3, 1e2, 200, GridScale::log});
  EXPECT_TRUE(c.divergent);
  // independent: the ratio at the grid top is e^{100}-ish
  const double top = (std::expm1(200.0) - 200.0) / (std::expm1(100.0) - 100.0);
  EXPECT_GT(top, 1e6);
}

TEST(ConvexIncreasing, CorpusMembers) {
  const auto nodes = oracle::logspace(1e-4, 1e4, 200);
  for (const auto& nf : lemma_corpus()) EXPECT_TRUE(check_convex_increasing(nf, nodes)) << nf.label;
  NFunction concave;
  concave.label = "sqrt";
  concave.eval = [](double r) { return std::sqrt(r); };
  EXPECT_FALSE(check_convex_increasing(concave, nodes));
}

TEST(LemmaSplit, EqualityCase) {
  const auto r = check_lemma_split(power_nfunction(3.0), 1.0, 1.0, 1.0 / 3.0, 2);
  EXPECT_NEAR(r.lhs, 1.0, 1e-15);
  EXPECT_NEAR(r.rhs, 1.0, 1e-14);
  EXPECT_TRUE(r.holds);
}

TEST(LemmaSplit, ZeroS) {
  for (double lambda : {1.0 / 3.0, 1.0, 10.0}) {
    const auto r = check_lemma_split(power_nfunction(3.0), 1.0, 0.0, lambda, 1);
    EXPECT_EQ(r.lhs, 0.0);
    EXPECT_GT(r.rhs, 0.0);
    EXPECT_TRUE(r.holds);
  }
}

TEST(LemmaSplit, QuarticBruteForce) {
  const auto r = check_lemma_split(power_nfunction(4.0), 2.0, 1.0, 0.25, 1);
  // r^{-1} M(r) s = 16/2; (1 - 1/4)(1/4 * 4)^{-1/3} 16 + 1/4 * 1
  EXPECT_DOUBLE_EQ(r.lhs, 8.0);
  EXPECT_NEAR(r.rhs, 0.75 * 16.0 + 0.25, 1e-12);
  EXPECT_TRUE(r.holds);
}

TEST(LemmaSplit, Preconditions) {
  EXPECT_THROW(check_lemma_split(power_nfunction(3.0), 1, 1, 0.2, 2), PreconditionError);
  EXPECT_THROW(check_lemma_split(power_nfunction(2.0), 1, 1, 1.0, 2), HypothesisError);
  EXPECT_THROW(check_lemma_split(power_nfunction(3.0), 1, 1, 1.0, 3), PreconditionError);
}

TEST(LemmaSplit, ZeroRadiusUsesContinuousExtension) {
  const auto a1 = check_lemma_split(power_nfunction(3.0), 0.0, 2.0, 1.0, 1);
  EXPECT_EQ(a1.lhs, 0.0);
  const auto a2 = check_lemma_split(power_log_nfunction(2.0), 0.0, 2.0, 1.0, 2);
  EXPECT_NEAR(a2.lhs, 0.0, 1e-5);  // M(r)/r² = log(1+r) -> 0
  const auto a3 = check_lemma_split(power_nfunction(2.5), 0.0, 2.0, 1.0, 2);
  EXPECT_NEAR(a3.lhs, 0.0, 1e-2);
}

TEST(LemmaSplit, FullGridHasNoViolations) {
  const auto grid = oracle::logspace(1e-3, 10.0, 50);
  for (const auto& nf : lemma_corpus()) {
    const double d = *nf.d_exp;
    int violations = 0;
    for (int alpha : {1, 2}) {
      for (double lambda : {1.0 / d, 1.0, 10.0}) {
        for (double r : grid) {
          for (double s : grid) {
            if (!check_lemma_split(nf, r, s, lambda, alpha).holds) ++violations;
          }
        }
      }
    }
    EXPECT_EQ(violations, 0) << nf.label;
  }
}

TEST(LemmaYoung, Examples) {
  const auto sq = power_nfunction(2.0);
  auto r = check_lemma_young(sq, 1.0, 1.0, 1.0);
  EXPECT_EQ(r.lhs, 1.0);
  EXPECT_EQ(r.rhs, 2.0);
  EXPECT_TRUE(r.holds);
  r = check_lemma_young(sq, 2.0, 0.0, 0.5);
  EXPECT_EQ(r.lhs, 0.0);
  EXPECT_DOUBLE_EQ(r.rhs, 0.5 * 4.0);
  const auto cube = power_nfunction(3.0);
  r = check_lemma_young(cube, 1.0, 0.5, 0.25);
  EXPECT_DOUBLE_EQ(r.lhs, 0.5);
  EXPECT_DOUBLE_EQ(r.rhs, 0.25 + 64.0 * 0.125);
  EXPECT_TRUE(r.holds);
}

TEST(LemmaYoung, EpsilonRange) {
  EXPECT_THROW(check_lemma_young(power_nfunction(2.0), 1, 1, 0.0), PreconditionError);
  EXPECT_THROW(check_lemma_young(power_nfunction(2.0), 1, 1, 1.5), PreconditionError);
}

TEST(LemmaYoung, FullGridHasNoViolations) {
  const auto grid = oracle::logspace(1e-3, 10.0, 50);
  auto corpus = lemma_corpus();
  corpus.push_back(power_nfunction(2.0));
  for (const auto& nf : corpus) {
    int violations = 0;
    for (double eps : {1e-3, 0.1, 1.0}) {
      for (double a : grid) {
        for (double b : grid) {
          if (!check_lemma_young(nf, a, b, eps).holds) ++violations;
        }
      }
    }
    EXPECT_EQ(violations, 0) << nf.label;
  }
}

TEST(NFunction, LogEvalMatchesEval) {
  for (const auto& nf : {power_nfunction(3.0), power_log_nfunction(2.0)}) {
    for (double r : oracle::logspace(1e-8, 1e8, 60)) {
      EXPECT_NEAR(std::exp(nf.log_eval(std::log(r))) / nf.eval(r), 1.0, 1e-12) << nf.label << r;
    }
  }
}

TEST(NFunction, TableInterpolatesPowersExactly) {
  std::vector<double> r, m;
  for (int k = -6; k <= 6; ++k) {
    r.push_back(std::pow(10.0, k));
    m.push_back(std::pow(10.0, 3 * k));
  }
  const auto nf = table_nfunction(r, m);
  for (double x : {1e-7, 0.3, 2.0, 777.0, 1e7}) EXPECT_NEAR(nf.eval(x) / (x * x * x), 1.0, 1e-10);
}

TEST(NFunction, CentralDifferenceDerivative) {
  NFunction nf;
  nf.label = "cube-no-deriv";
  nf.eval = [](double r) { return r * r * r; };
  for (double r : {0.5, 1.0, 3.0}) EXPECT_NEAR(nf.derivative(r), 3 * r * r, 1e-6 * r * r);
}

TEST(GridSpec, Invariants) {
  EXPECT_THROW(GridSpec({1.0, 0.5, 10, GridScale::log}).validate(), PreconditionError);
  EXPECT_THROW(GridSpec({0.1, 0.5, 1, GridScale::log}).validate(), PreconditionError);
  const auto nodes = GridSpec{1e-6, 1e6, 400, GridScale::log}.nodes();
  EXPECT_EQ(nodes.size(), 400u);
  EXPECT_EQ(nodes.front(), 1e-6);
  EXPECT_EQ(nodes.back(), 1e6);
}
