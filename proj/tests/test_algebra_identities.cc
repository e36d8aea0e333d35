#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "gevrey_bbm/algebra_identities.h"
#include "test_util.h"

namespace gevrey_bbm {
namespace {

const Triad kOneOneMinusTwo(1, 1, -2);

// Independent closed form: sum_k (2 sigma)^{2k} / (2k)! x^{2k+1} = x (cosh(2 sigma x) - 1).
double series_closed_form(const RealTriad& t, double sigma) {
  double s = 0.0;
  for (double x : t) s += x * (std::cosh(2.0 * sigma * x) - 1.0);
  return s;
}

// Long summation in extended precision.
long double psi_long_sum(const RealTriad& t, int terms) {
  const long double pref = std::pow(std::fabs(static_cast<long double>(t[0]) * t[1] * t[2]), 1.0L / 6.0L);
  long double total = 0.0L;
  for (double x : t) {
    long double term = 1.0L;  // 2^{2k} x^{2k} / (2k+1)! at k = 0
    long double s = 0.0L;
    for (int k = 0; k < terms; ++k) {
      s += term;
      term *= 4.0L * x * x / ((2.0L * k + 2.0L) * (2.0L * k + 3.0L));
    }
    total += s;
  }
  return pref * total;
}

TEST(Triad, RejectsPointsOffTheHyperplane) {
  EXPECT_THROW_KIND(Triad(1, 1, 1), ErrorKind::kInvalidInput);
  EXPECT_NO_THROW(Triad(Rational(1, 3), Rational(1, 6), Rational(-1, 2)));
  const Triad t = Triad::from_pair(Rational(2, 5), Rational(-7, 3));
  EXPECT_EQ(t.xi3(), Rational(29, 15));
}

TEST(PowerSum, Examples) {
  EXPECT_EQ(power_sum(kOneOneMinusTwo, 1), -6);
  EXPECT_EQ(power_sum(kOneOneMinusTwo, 2), -30);
  const Triad t(Rational(3, 7), Rational(-3, 7), 0);
  for (int k = 1; k <= 6; ++k) EXPECT_EQ(power_sum(t, k), 0);
}

TEST(FactoredForm, Examples) {
  EXPECT_EQ(factored_form(kOneOneMinusTwo, 1), -6);
  EXPECT_EQ(factored_form(kOneOneMinusTwo, 2), -30);
  const Triad t(Rational(3, 7), Rational(-3, 7), 0);
  for (int k = 1; k <= 6; ++k) EXPECT_EQ(factored_form(t, k), 0);
}

TEST(FactoredForm, LowOrderSpecialCases) {
  for (const Triad& t : {Triad(2, 3, -5), Triad(Rational(1, 2), Rational(-5, 4), Rational(3, 4))}) {
    const Rational p = t.xi1() * t.xi2() * t.xi3();
    const Rational e2 = t.xi1() * t.xi2() + t.xi1() * t.xi3() + t.xi2() * t.xi3();
    EXPECT_EQ(factored_form(t, 1), 3 * p);
    EXPECT_EQ(factored_form(t, 2), -5 * p * e2);
  }
}

TEST(FactoredForm, MatchesPowerSumOnRationalTriads) {
  SeededRng rng(99);
  for (int i = 0; i < 200; ++i) {
    const Rational a(static_cast<long>(rng.uniform(-1000, 1000)), 1 + static_cast<long>(rng.uniform(0, 50)));
    const Rational b(static_cast<long>(rng.uniform(-1000, 1000)), 1 + static_cast<long>(rng.uniform(0, 50)));
    const Triad t = Triad::from_pair(a, b);
    for (int k = 1; k <= 8; ++k) ASSERT_EQ(power_sum(t, k), factored_form(t, k)) << t.to_string();
  }
}

TEST(Expansion, CubicCoefficientsByHand) {
  // a^3 + b^3 - (a + b)^3 = -3 a^2 b - 3 a b^2.
  const HomogeneousPolynomial p = expand_power_sum(1);
  EXPECT_EQ(p.degree, 3);
  ASSERT_EQ(p.coeffs.size(), 4u);
  EXPECT_EQ(p.coeffs[0], 0);
  EXPECT_EQ(p.coeffs[1], -3);
  EXPECT_EQ(p.coeffs[2], -3);
  EXPECT_EQ(p.coeffs[3], 0);
}

TEST(Expansion, SymbolicEqualityAtOrderThree) {
  EXPECT_EQ(expand_power_sum(3), expand_factored_form(3));
  EXPECT_EQ(expand_power_sum(3).degree, 7);
}

TEST(Expansion, BinomialOracleForPowerSum) {
  // Coefficient of a^i b^{d-i} in -(a+b)^d is -binom(d, i) for 0 < i < d.
  const int k = 5;
  const int d = 2 * k + 1;
  const HomogeneousPolynomial p = expand_power_sum(k);
  BigInt binom = 1;
  for (int i = 1; i < d; ++i) {
    binom = binom * (d - i + 1) / i;
    EXPECT_EQ(p.coeffs[static_cast<std::size_t>(i)], -binom);
  }
}

TEST(VerifyFactorIdentity, SmallRange) {
  const IdentityReport r = verify_factor_identity(1, 3);
  EXPECT_TRUE(r.all_equal);
  EXPECT_EQ(r.max_defect, 0);
  // Integer pairs with |a|, |b|, |a + b| <= 3.
  EXPECT_EQ(r.triads_tested, 37);
}

TEST(VerifyFactorIdentity, FullRangeWithSymbolicCheck) {
  const auto start = std::chrono::steady_clock::now();
  const IdentityReport r = verify_factor_identity(20, 10, 20);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_TRUE(r.all_equal);
  EXPECT_EQ(r.max_defect, 0);
  EXPECT_TRUE(r.symbolic_equal);
  EXPECT_EQ(r.symbolic_k_max, 20);
  EXPECT_LT(secs, 30.0);
  ASSERT_GE(r.special_cases.size(), 2u);
  EXPECT_EQ(r.special_cases[0].k, 1);
  EXPECT_EQ(r.special_cases[0].label, "3·ξ₁ξ₂ξ₃");
  EXPECT_TRUE(r.special_cases[0].holds);
  EXPECT_EQ(r.special_cases[1].k, 2);
  EXPECT_EQ(r.special_cases[1].label, "−5·ξ₁ξ₂ξ₃·e₂");
  EXPECT_TRUE(r.special_cases[1].holds);
}

TEST(VerifyFactorIdentity, RejectsNonPositiveOrder) {
  EXPECT_THROW_KIND(verify_factor_identity(0, 3), ErrorKind::kInvalidInput);
}

TEST(SeriesSymmetrized, VanishesAtZeroSigmaAndOnDegenerateTriads) {
  EXPECT_EQ(series_symmetrized(kOneOneMinusTwo, 0.0).value, 0.0);
  for (double sigma : {0.01, 0.5, 2.0}) {
    EXPECT_EQ(series_symmetrized(RealTriad{3.5, -3.5, 0.0}, sigma).value, 0.0);
  }
}

TEST(SeriesSymmetrized, SmallSigmaLimit) {
  // Leading term (2 sigma)^2 / 2 * 3 xi1 xi2 xi3 = 6 sigma^2 xi1 xi2 xi3 = -12 sigma^2.
  const double r3 = series_symmetrized(kOneOneMinusTwo, 1e-3).value / 1e-6;
  const double r4 = series_symmetrized(kOneOneMinusTwo, 1e-4).value / 1e-8;
  EXPECT_NEAR(r3, -12.0, 1e-4);
  EXPECT_NEAR(r4, -12.0, 1e-6);
  // Richardson: next correction is O(sigma^2), so the extrapolated limit sits on -12.
  const double extrapolated = (100.0 * r4 - r3) / 99.0;
  EXPECT_NEAR(extrapolated / -12.0, 1.0, 1e-8);
}

TEST(SeriesSymmetrized, MatchesHyperbolicClosedForm) {
  SeededRng rng(5);
  for (int i = 0; i < 500; ++i) {
    const RealTriad t = sample_triad(rng, 20.0);
    const double sigma = rng.uniform(0.001, 0.5);
    const SeriesValue v = series_symmetrized(t, sigma);
    const double expected = series_closed_form(t, sigma);
    double scale = 0.0;
    for (double x : t) scale += std::abs(x) * (std::cosh(2.0 * sigma * x) - 1.0);
    ASSERT_NEAR(v.value, expected, 1e-12 * scale) << sigma;
    EXPECT_GE(v.tail_bound, 0.0);
    EXPECT_LE(v.tail_bound, kSeriesRelTol * scale + 1e-300);
  }
}

TEST(SeriesSymmetrized, ExactAndRealTriadsAgree) {
  const Triad t(Rational(5, 2), Rational(-1, 3), Rational(-13, 6));
  EXPECT_DOUBLE_EQ(series_symmetrized(t, 0.3).value, series_symmetrized(t.to_real(), 0.3).value);
}

TEST(SeriesSymmetrized, DivergesWhenSigmaXiIsHuge) {
  EXPECT_THROW_KIND(series_symmetrized(RealTriad{200.0, -100.0, -100.0}, 50.0),
                    ErrorKind::kSeriesDivergence);
}

TEST(SeriesSymmetrized, RejectsNegativeSigma) {
  EXPECT_THROW_KIND(series_symmetrized(kOneOneMinusTwo, -0.1), ErrorKind::kInvalidInput);
}

TEST(Psi, DegenerateTriadIsZero) {
  EXPECT_EQ(psi(RealTriad{2.0, -2.0, 0.0}), 0.0);
}

TEST(Psi, MatchesLongSummation) {
  const double v = psi(kOneOneMinusTwo);
  EXPECT_GT(v, 0.0);
  EXPECT_NEAR(v, static_cast<double>(psi_long_sum(kOneOneMinusTwo.to_real(), 500)), 1e-12 * v);
  SeededRng rng(8);
  for (int i = 0; i < 200; ++i) {
    const RealTriad t = sample_triad(rng, 20.0);
    const double p = psi(t);
    ASSERT_NEAR(p, static_cast<double>(psi_long_sum(t, 500)), 1e-12 * p);
  }
}

TEST(Psi, CalibratedConstantIsFiniteAndReproducible) {
  const PsiCalibration a = calibrate_psi_constant(2000, 20.0, 17);
  const PsiCalibration b = calibrate_psi_constant(2000, 20.0, 17);
  EXPECT_TRUE(std::isfinite(a.max_ratio));
  EXPECT_GT(a.max_ratio, 0.0);
  EXPECT_EQ(a.max_ratio, b.max_ratio);
}

TEST(FabBound, DegenerateTriadsHaveZeroSeries) {
  for (double x : {0.5, 3.0, 17.0}) {
    EXPECT_EQ(series_symmetrized(RealTriad{x, 0.0, -x}, 0.1).value, 0.0);
    EXPECT_EQ(series_symmetrized(RealTriad{0.0, x, -x}, 0.1).value, 0.0);
  }
}

TEST(FabBound, ConstantIsStableAcrossSigma) {
  double lo = INFINITY;
  double hi = 0.0;
  for (double sigma : {0.01, 0.1, 0.5}) {
    const FabCalibration c = check_fab_bound(2000, sigma);
    EXPECT_TRUE(std::isfinite(c.max_ratio));
    EXPECT_GT(c.max_ratio, 0.0);
    EXPECT_EQ(c.samples, 2000);
    lo = std::min(lo, c.max_ratio);
    hi = std::max(hi, c.max_ratio);
  }
  EXPECT_LT(hi / lo, 3.0);
}

TEST(FabBound, Reproducible) {
  EXPECT_EQ(check_fab_bound(500, 0.1, 20.0, 3).max_ratio,
            check_fab_bound(500, 0.1, 20.0, 3).max_ratio);
}

TEST(FabBound, RejectsNonPositiveSigma) {
  EXPECT_THROW_KIND(check_fab_bound(10, 0.0), ErrorKind::kInvalidInput);
}

TEST(BoundExponents, Examples) {
  const BoundExponents a2 = fractional_bound_exponents(2.0);
  EXPECT_DOUBLE_EQ(a2.epsilon0, 5.0 / 6.0);
  EXPECT_DOUBLE_EQ(a2.beta, 1.5);
  EXPECT_DOUBLE_EQ(a2.mu, 2.0 / 3.0);
  const BoundExponents knee = fractional_bound_exponents(7.0 / 3.0);
  EXPECT_DOUBLE_EQ(knee.beta, 2.0);
  EXPECT_DOUBLE_EQ(knee.mu, 0.5);
  const BoundExponents below = fractional_bound_exponents(7.0 / 3.0 - 1e-12);
  EXPECT_NEAR(below.beta, 2.0, 1e-11);
  EXPECT_NEAR(below.mu, 0.5, 1e-11);
  const BoundExponents a3 = fractional_bound_exponents(3.0);
  EXPECT_DOUBLE_EQ(a3.epsilon0, 1.0);
  EXPECT_DOUBLE_EQ(a3.beta, 2.0);
  EXPECT_DOUBLE_EQ(a3.mu, 0.5);
}

TEST(BoundExponents, MuIsReciprocalOfBeta) {
  for (double alpha = 1.05; alpha < 4.0; alpha += 0.05) {
    const BoundExponents e = fractional_bound_exponents(alpha);
    EXPECT_NEAR(e.mu * e.beta, 1.0, 1e-14);
    EXPECT_LE(e.epsilon0, 1.0);
  }
}

TEST(BoundExponents, RejectsAlphaAtOrBelowOne) {
  EXPECT_THROW_KIND(fractional_bound_exponents(1.0), ErrorKind::kInvalidInput);
  EXPECT_THROW_KIND(fractional_bound_exponents(0.5), ErrorKind::kInvalidInput);
}

}  // namespace
}  // namespace gevrey_bbm
