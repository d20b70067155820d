#include "qtsolve/symbols.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace qtsolve;

namespace {

constexpr double kPi = std::numbers::pi;

const Quaternion kBetaAr{0.45, -0.01, 0.3, -0.35};
const Quaternion kBetaMa{-0.08, 0.21, -0.8, -0.79};

// fcheck closed forms of the two signal models, used as independent oracles.
double fcheck_ar_closed(const Quaternion& beta, double delta, double theta) {
  const PolarForm pf = polar(beta);
  const double rho = pf.modulus;
  return 4.0 * delta * delta /
         (1.0 + rho * rho - 2.0 * rho * std::cos(std::abs(theta) + pf.angle));
}

double fcheck_ma_closed(const Quaternion& beta, double delta, double theta) {
  const PolarForm pf = polar(beta);
  const double rho = pf.modulus;
  return 4.0 * delta * delta *
         (1.0 + rho * rho + 2.0 * rho * std::cos(pf.angle + std::abs(theta)));
}

}  // namespace

TEST(Coefficients, Ma1ClosedForm) {
  const SymbolModel m = SymbolModel::ma1(Quaternion(0.5), 1.0);
  const auto t = m.coefficients(3);
  EXPECT_NEAR(t[0].a0, 5.0, 1e-14);
  EXPECT_EQ(t[1], Quaternion(2.0));
  EXPECT_EQ(t[2], Quaternion());
  EXPECT_FALSE(m.coefficients_approximate());
}

TEST(Coefficients, Ar1ClosedForm) {
  const SymbolModel m = SymbolModel::ar1(Quaternion(0.5), 1.0);
  const auto t = m.coefficients(3);
  EXPECT_NEAR(t[0].a0, 16.0 / 3.0, 1e-13);
  EXPECT_NEAR(t[1].a0, 8.0 / 3.0, 1e-13);
  EXPECT_NEAR(t[2].a0, 4.0 / 3.0, 1e-13);
  for (const Quaternion& v : t) {
    EXPECT_NEAR(v.a1, 0.0, 1e-14);
    EXPECT_NEAR(v.a2, 0.0, 1e-14);
    EXPECT_NEAR(v.a3, 0.0, 1e-14);
  }
}

TEST(Coefficients, ConstantSymbol) {
  const SymbolModel m = SymbolModel::constant(1.0);
  const auto t = m.coefficients(4);
  EXPECT_EQ(t[0], Quaternion(1.0));
  for (std::size_t s = 1; s < 4; ++s) EXPECT_EQ(t[s], Quaternion());
}

TEST(Coefficients, QuadratureFallbackMatchesEta) {
  const SymbolModel ma = SymbolModel::ma1(kBetaMa, 1.0);
  const SymbolModel quad = SymbolModel::from_closed_form(
      [&ma](double x) { return ma.phi1(x); }, [&ma](double x) { return ma.phi2(x); });
  EXPECT_TRUE(quad.coefficients_approximate());
  const auto exact = ma.coefficients(5);
  const auto approx = quad.coefficients(5);
  for (std::size_t s = 0; s < 5; ++s)
    EXPECT_LE((exact[s] - approx[s]).abs(), 1e-12);

  const SymbolModel ar = SymbolModel::ar1(kBetaAr, 1.0);
  const SymbolModel quad_ar = SymbolModel::from_closed_form(
      [&ar](double x) { return ar.phi1(x); }, [&ar](double x) { return ar.phi2(x); });
  const auto exact_ar = ar.coefficients(6);
  const auto approx_ar = quad_ar.coefficients(6);
  for (std::size_t s = 0; s < 6; ++s)
    EXPECT_LE((exact_ar[s] - approx_ar[s]).abs(), 1e-10);
}

TEST(ClosedForms, MatchPartialSums) {
  for (const SymbolModel& m :
       {SymbolModel::ar1(kBetaAr, 1.0), SymbolModel::ma1(kBetaMa, 1.0),
        SymbolModel::ar1(Quaternion(0.5), 1.0), SymbolModel::ar1(Quaternion(-0.5), 2.0)}) {
    for (const double x : {0.3, -1.2, 2.9, -kPi, 0.0}) {
      EXPECT_LE(std::abs(m.phi1(x) - m.phi1_partial(x, 500)), 1e-9);
      EXPECT_LE(std::abs(m.phi2(x) - m.phi2_partial(x, 500)), 1e-9);
    }
  }
}

TEST(GBlock, DiagonalForRealEvenSymbol) {
  // Real beta keeps phi2 identically zero and phi1 even.
  const SymbolModel m = SymbolModel::ma1(Quaternion(0.5), 1.0);
  const GBlock g = m.g_block(0.7);
  EXPECT_EQ(g.m12, C01(0, 0));
  EXPECT_EQ(g.m21, C01(0, 0));
  EXPECT_NEAR(g.m11.real(), g.m22.real(), 1e-14);
}

TEST(GBlock, Ma1AtZero) {
  const SymbolModel m = SymbolModel::ma1(Quaternion(0.5), 1.0);
  const GBlock g = m.g_block(0.0);
  EXPECT_NEAR(g.m11.real(), 9.0, 1e-14);
  EXPECT_NEAR(g.m22.real(), 9.0, 1e-14);
  EXPECT_NEAR(std::abs(g.m12), 0.0, 1e-14);
}

TEST(GBlock, HermitianEverywhere) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(-kPi, kPi);
  for (const SymbolModel& m : {SymbolModel::ar1(kBetaAr, 1.0), SymbolModel::ma1(kBetaMa, 1.0)}) {
    for (int trial = 0; trial < 100; ++trial) {
      const GBlock g = m.g_block(dist(rng));
      EXPECT_TRUE(g.is_hermitian(1e-14));
    }
  }
}

TEST(Extremal, MatchesHermitianEigensolve) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> dist(-kPi, kPi);
  const SymbolModel m = SymbolModel::ar1(kBetaAr, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double x = dist(rng);
    const auto [lo, hi] = m.extremal(x);
    // 2x2 Hermitian eigenvalues by the trace/determinant route.
    const GBlock g = m.g_block(x);
    const double tr = g.m11.real() + g.m22.real();
    const double det = g.m11.real() * g.m22.real() - std::norm(g.m12);
    EXPECT_NEAR(lo + hi, tr, 1e-12 * std::max(1.0, std::abs(tr)));
    EXPECT_NEAR(lo * hi, det, 1e-11 * std::max(1.0, std::abs(det)));
    EXPECT_LE(lo, hi);
  }
}

TEST(Extremal, MaMinimumClosedForm) {
  // theta0 = 0 for real beta: min fcheck = 4 delta^2 (1-beta)^2 at x = +-pi.
  const SymbolModel m = SymbolModel::ma1(Quaternion(0.5), 1.0);
  EXPECT_NEAR(m.min_fcheck(), 1.0, 1e-12);
  EXPECT_NEAR(m.extremal(kPi).first, 1.0, 1e-12);
}

TEST(Extremal, MatchesPaperClosedFormsOfExamples) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> dist(-kPi, kPi);
  const SymbolModel ar = SymbolModel::ar1(kBetaAr, 1.0);
  const SymbolModel ma = SymbolModel::ma1(kBetaMa, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double x = dist(rng);
    EXPECT_NEAR(ar.extremal(x).first, fcheck_ar_closed(kBetaAr, 1.0, x), 1e-11);
    EXPECT_NEAR(ma.extremal(x).first, fcheck_ma_closed(kBetaMa, 1.0, x), 1e-11);
  }
}

TEST(Extremal, ArPositivityOnFineGrid) {
  const SymbolModel m = SymbolModel::ar1(kBetaAr, 1.0);
  EXPECT_GT(m.min_fcheck(10000), 0.0);
}

TEST(Extremal, Phi2ZeroReducesToMin) {
  // Q_(0,1)-valued covariance sequence: fcheck(x) = min(phi1(x), phi1(-x)).
  const SymbolModel m = SymbolModel::from_covariance(
      {Quaternion(2.0), Quaternion{0.3, 0.1, 0, 0}, Quaternion{-0.05, 0.2, 0, 0}});
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dist(-kPi, kPi);
  for (int trial = 0; trial < 100; ++trial) {
    const double x = dist(rng);
    const double expected = std::min(m.phi1(x).real(), m.phi1(-x).real());
    EXPECT_NEAR(m.extremal(x).first, expected, 1e-12);
  }
}

TEST(StructureLemma, BuiltInModels) {
  for (const SymbolModel& m : {SymbolModel::ar1(kBetaAr, 1.0), SymbolModel::ma1(kBetaMa, 1.0),
                               SymbolModel::ar1(Quaternion{0.3, 0.4, 0.0, 0.4}, 1.0)}) {
    for (std::size_t j = 0; j <= 512; ++j) {
      const double x = -kPi + 2 * kPi * static_cast<double>(j) / 512.0;
      EXPECT_LE(std::abs(m.phi1(x).imag()), 1e-12);
      EXPECT_LE(std::abs(m.phi2(x) + m.phi2(-x)), 1e-12);
    }
  }
}

TEST(StructureLemma, RejectsInvalidClosedForms) {
  // phi2 even (not odd) must be rejected with a diagnostic.
  EXPECT_THROW(SymbolModel::from_closed_form([](double) { return C01(1.0, 0.0); },
                                             [](double x) { return C01(std::cos(x), 0.0); }),
               std::invalid_argument);
  // phi1 with an imaginary part must be rejected.
  EXPECT_THROW(SymbolModel::from_closed_form([](double) { return C01(1.0, 0.5); },
                                             [](double) { return C01(0.0, 0.0); }),
               std::invalid_argument);
}

TEST(HpdTest, Verdicts) {
  EXPECT_EQ(SymbolModel::ma1(Quaternion(0.5), 1.0).hpd_test(),
            SymbolModel::Definiteness::definite);
  EXPECT_EQ(SymbolModel::constant(0.0).hpd_test(), SymbolModel::Definiteness::semidefinite);
  const SymbolModel indefinite = SymbolModel::from_closed_form(
      [](double) { return C01(0.0, 0.0); }, [](double x) { return C01(std::sin(x), 0.0); });
  EXPECT_EQ(indefinite.hpd_test(), SymbolModel::Definiteness::indefinite);
  EXPECT_THROW(indefinite.hpd_test(32), std::invalid_argument);
}

TEST(SymbolModel, Ar1RequiresContractiveBeta) {
  EXPECT_THROW(SymbolModel::ar1(Quaternion(1.5), 1.0), std::domain_error);
  // ma1 permits |beta| >= 1.
  EXPECT_NO_THROW(SymbolModel::ma1(Quaternion{-0.2, 0.18, -1.19, -0.07}, 1.0));
}

TEST(SymbolModel, EtaUnavailableOnClosedFormOnlyModels) {
  const SymbolModel quad = SymbolModel::from_closed_form(
      [](double x) { return C01(2.0 + std::cos(x), 0.0); }, [](double) { return C01(0.0, 0.0); });
  EXPECT_FALSE(quad.has_eta());
  EXPECT_THROW(quad.eta(0), std::logic_error);
  EXPECT_THROW(quad.phi1_partial(0.0, 4), std::logic_error);
  EXPECT_THROW(SymbolModel::from_covariance({}), std::invalid_argument);
  EXPECT_THROW(SymbolModel::from_covariance({Quaternion{1, 0.5, 0, 0}}), std::invalid_argument);
}
