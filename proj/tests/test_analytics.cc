#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gevrey_bbm/algebra_identities.h"
#include "gevrey_bbm/analytics.h"
#include "gevrey_bbm/norms.h"
#include "test_util.h"

namespace gevrey_bbm {
namespace {

constexpr double kPi = std::numbers::pi;

// |c_j| = amplitude * exp(-sigma |xi_j|) / (1 + xi_j^2) with a seeded phase per mode.
SpectralField planted_spectrum(const Grid& g, double sigma, double amplitude, std::uint64_t seed) {
  SeededRng rng(seed);
  SpectralField f(g);
  for (int j = 0; j < g.max_mode(); ++j) {
    const double xi = g.wavenumber(j);
    const double mag = amplitude * std::exp(-sigma * xi) / (1.0 + xi * xi);
    const Complex c = j == 0 ? Complex(mag, 0.0) : std::polar(mag, 2.0 * kPi * rng.uniform());
    f.coeff(j) = c;
    if (j > 0) f.coeff(-j) = std::conj(c);
  }
  return f;
}

RadiusEstimate fit_planted(const SpectralField& f) {
  const Band b = select_band(f);
  return estimate_radius(f, b.xi_lo, b.xi_hi);
}

ConservationReport synthetic_report(double sigma, double defect) {
  ConservationReport r;
  r.sigma = sigma;
  r.defect = defect;
  return r;
}

TEST(TrilinearRate, VanishesAtZeroSigma) {
  const SpectralField f = random_band_limited_field(Grid(64, 16.0), 15, 1);
  const double scale = std::pow(l2_norm(f), 3);
  EXPECT_LT(std::abs(trilinear_rate_physical(f, 0.0)), 1e-12 * scale);
  EXPECT_LT(std::abs(trilinear_rate_triads(f, 0.0)), 1e-12 * scale);
}

TEST(TrilinearRate, ZeroField) {
  const SpectralField f(Grid(64, 16.0));
  EXPECT_EQ(trilinear_rate_physical(f, 0.3), 0.0);
  EXPECT_EQ(trilinear_rate_triads(f, 0.3), 0.0);
  EXPECT_EQ(trilinear_defect_rate(f, 0.3, 2.0), 0.0);
}

TEST(TrilinearRate, SingleModeHasNoResonantTriad) {
  const Grid g(64, 2.0 * kPi);
  SpectralField f(g);
  f.coeff(3) = Complex(2.0, 1.0);
  f.coeff(-3) = Complex(2.0, -1.0);
  EXPECT_LT(std::abs(trilinear_rate_triads(f, 0.4)), 1e-12);
  EXPECT_LT(std::abs(trilinear_rate_physical(f, 0.4)), 1e-12);
}

TEST(TrilinearRate, PathsAgreeOnRandomFields) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SpectralField f = random_band_limited_field(Grid(64, 16.0), 15, 100 + seed);
    const double a = trilinear_rate_physical(f, 0.2);
    const double b = trilinear_rate_triads(f, 0.2);
    EXPECT_NEAR(a, b, kCrossCheckRelTol * std::abs(a)) << seed;
    EXPECT_DOUBLE_EQ(trilinear_defect_rate(f, 0.2, 2.0), a);
  }
}

TEST(TrilinearRate, MatchesEnergyDerivativeOfFlow) {
  // dE/dt from a centered difference of the RK4 flow.
  const Grid g(128, 32.0);
  const SpectralField u0 = 0.1 * random_band_limited_field(g, 12, 31);
  const double sigma = 0.2;
  const double h = 1e-3;
  const double ep = energy(step_rk4(u0, h, 2.0), sigma, 2.0);
  const double em = energy(step_rk4(u0, -h, 2.0), sigma, 2.0);
  const double rate = trilinear_rate_physical(u0, sigma);
  ASSERT_GT(std::abs(rate), 0.0);
  EXPECT_NEAR((ep - em) / (2.0 * h), rate, 1e-5 * std::abs(rate));
}

TEST(MeasureDefect, ZeroSigmaIsDiscretizationDrift) {
  const Grid g(128, 32.0);
  const SpectralField u0 = make_initial_field(InitialData{}, g);
  const ConservationReport r = measure_defect(u0, 0.0, 2.0, ModelParams(2.0, g, 1e-3, 0.0));
  EXPECT_LT(std::abs(r.defect), 1e-8 * r.energy0);
  EXPECT_EQ(r.energy_series.size(), 2001u);
  EXPECT_FALSE(r.predicted_bound.has_value());
}

TEST(MeasureDefect, DoublingSigmaQuadruplesDefect) {
  const Grid g(128, 32.0);
  const SpectralField u0 = make_initial_field(InitialData{}, g);
  const ModelParams p(2.0, g, 1e-3, 0.0);
  const double d1 = measure_defect(u0, 0.02, 2.0, p).defect;
  const double d2 = measure_defect(u0, 0.04, 2.0, p).defect;
  ASSERT_GT(d1, 0.0);
  EXPECT_NEAR(d2 / d1, 4.0, 0.2);
}

TEST(MeasureDefect, BoundUsesCalibratedConstant) {
  const Grid g(128, 32.0);
  const SpectralField u0 = make_initial_field(InitialData{}, g);
  const ConservationReport r =
      measure_defect(u0, 0.1, 1.0, ModelParams(2.0, g, 1e-3, 0.0), 0.01);
  ASSERT_TRUE(r.predicted_bound.has_value());
  const double n = gevrey_norm(u0, GevreyWeight{0.1, 1.0, SymbolKind::kCosh});
  EXPECT_NEAR(*r.predicted_bound, 0.01 * 1.0 * std::pow(0.1, 1.5) * n * n * n, 1e-14);
  EXPECT_EQ(r.bound_satisfied, r.defect <= *r.predicted_bound);
}

TEST(DefectScaling, SyntheticQuadraticLaw) {
  std::vector<ConservationReport> reports;
  for (double s : {0.01, 0.0176, 0.031, 0.0547, 0.0964, 0.17, 0.3}) {
    reports.push_back(synthetic_report(s, 3.7 * s * s));
  }
  const ScalingFit fit = fit_defect_scaling(reports, 1e-12);
  EXPECT_NEAR(fit.slope, 2.0, 0.01);
  EXPECT_EQ(fit.sigmas_used.size(), 7u);
  EXPECT_TRUE(fit.sigmas_dropped.empty());
}

TEST(DefectScaling, DropsPointsBelowFloor) {
  std::vector<ConservationReport> reports;
  for (double s : {0.001, 0.01, 0.03, 0.1, 0.3}) reports.push_back(synthetic_report(s, s * s));
  const ScalingFit fit = fit_defect_scaling(reports, 2e-6);
  EXPECT_EQ(fit.sigmas_dropped, std::vector<double>{0.001});
  EXPECT_NEAR(fit.slope, 2.0, 1e-12);
}

TEST(DefectScaling, TooFewPointsIsInsufficientData) {
  std::vector<ConservationReport> reports;
  for (double s : {0.01, 0.1, 0.3}) reports.push_back(synthetic_report(s, s * s));
  EXPECT_THROW_KIND(fit_defect_scaling(reports, 0.0), ErrorKind::kInsufficientData);
}

TEST(DefectScaling, NarrowSigmaSpanIsInsufficientData) {
  std::vector<ConservationReport> reports;
  for (double s : {0.1, 0.15, 0.2, 0.3}) reports.push_back(synthetic_report(s, s * s));
  EXPECT_THROW_KIND(fit_defect_scaling(reports, 0.0), ErrorKind::kInsufficientData);
}

TEST(BilinearConstant, StableAcrossResolution) {
  double lo = INFINITY;
  double hi = 0.0;
  for (int n : {64, 128, 256}) {
    const BilinearCalibration c =
        calibrate_bilinear_constant(100, GevreyWeight{0.1, 0.0, SymbolKind::kCosh}, 2.0, Grid(n, 64.0));
    EXPECT_EQ(c.pairs_used, 100);
    EXPECT_EQ(c.pairs_skipped, 0);
    lo = std::min(lo, c.constant);
    hi = std::max(hi, c.constant);
  }
  EXPECT_GT(lo, 0.0);
  EXPECT_LT(hi / lo, 2.0);
}

TEST(BilinearConstant, StableAcrossSigma) {
  double lo = INFINITY;
  double hi = 0.0;
  for (double sigma : {0.0, 0.1, 0.3}) {
    const double c =
        calibrate_bilinear_constant(100, GevreyWeight{sigma, 0.0, SymbolKind::kCosh}, 2.0, Grid(128, 64.0))
            .constant;
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  EXPECT_LT(hi / lo, 2.0);
}

TEST(BilinearConstant, RejectsTooFewSamplesOrCoarseGrid) {
  const GevreyWeight w{0.1, 0.0, SymbolKind::kCosh};
  EXPECT_THROW_KIND(calibrate_bilinear_constant(99, w, 2.0, Grid(128, 64.0)), ErrorKind::kInvalidInput);
  EXPECT_THROW_KIND(calibrate_bilinear_constant(100, w, 2.0, Grid(32, 64.0)), ErrorKind::kInvalidInput);
}

TEST(EstimateRadius, SyntheticSpectrum) {
  const RadiusEstimate e = fit_planted(planted_spectrum(Grid(2048, 16.0), 0.5, 1.0, 1));
  EXPECT_NEAR(e.sigma_est, 0.5, 0.01);
  EXPECT_GT(e.r2, 0.999);
  EXPECT_GE(e.modes_used, kMinRadiusModes);
}

TEST(EstimateRadius, RecoversPlantedRateAcrossRange) {
  const Grid g(2048, 16.0);
  for (double sigma : {0.05, 0.1, 0.2, 0.5, 1.0, 1.5, 2.0}) {
    const RadiusEstimate e = fit_planted(planted_spectrum(g, sigma, 3.0, 7));
    EXPECT_NEAR(e.sigma_est, sigma, 0.02 * sigma) << sigma;
  }
}

TEST(EstimateRadius, ScaleInvariant) {
  const Grid g(1024, 32.0);
  const SpectralField f = planted_spectrum(g, 0.3, 1.0, 2);
  const RadiusEstimate a = fit_planted(f);
  const RadiusEstimate b = fit_planted(10.0 * f);
  EXPECT_NEAR(a.sigma_est, b.sigma_est, 1e-9 * a.sigma_est);
}

TEST(EstimateRadius, ZeroFieldIsTooThin) {
  const SpectralField f(Grid(256, 16.0));
  EXPECT_THROW_KIND(select_band(f), ErrorKind::kSpectrumTooThin);
  EXPECT_THROW_KIND(estimate_radius(f, 0.5, 10.0), ErrorKind::kSpectrumTooThin);
}

TEST(EstimateRadius, NarrowBandIsTooThin) {
  const Grid g(256, 16.0);
  const SpectralField f = planted_spectrum(g, 0.3, 1.0, 3);
  EXPECT_THROW_KIND(estimate_radius(f, 1.0, 2.0), ErrorKind::kSpectrumTooThin);
}

TEST(TrackRadius, LinearFlowKeepsRadius) {
  const Grid g(512, 128.0);
  ModelParams p(2.0, g, 0.05, 50.0);
  p.linear_only = true;
  const Trajectory t = simulate(make_initial_field(InitialData{}, g), p,
                                GevreyWeight{0.1, 0.0, SymbolKind::kCosh}, 50);
  const RadiusFit fit = track_radius(t);
  EXPECT_NEAR(fit.mu_fit, 0.0, 1e-6);
  EXPECT_TRUE(fit.check_passed);
  EXPECT_DOUBLE_EQ(fit.mu_theory, 2.0 / 3.0);
}

TEST(TrackRadius, TooFewStatesIsInsufficientData) {
  const Grid g(64, 16.0);
  const Trajectory t = simulate(make_initial_field(InitialData{}, g), ModelParams(2.0, g, 0.1, 0.5),
                                GevreyWeight{}, 1);
  EXPECT_THROW_KIND(track_radius(t), ErrorKind::kInsufficientData);
}

TEST(TrackRadius, NoValidSamplesIsNoFit) {
  const Grid g(64, 16.0);
  const Trajectory t = simulate(SpectralField(g), ModelParams(2.0, g, 0.5, 10.0), GevreyWeight{}, 1);
  EXPECT_THROW_KIND(track_radius(t), ErrorKind::kNoFit);
}

TEST(Schedule, FormulaWithUnitConstants) {
  // N0 = 1/8 gives delta = 1; T = 1.5 gives n = 1.
  for (double sigma0 : {0.3, 1.0, 4.0}) {
    const ScheduleResult r = schedule_sigma(1.5, sigma0, 1.0, 1.0, 2.0, 0.125);
    EXPECT_DOUBLE_EQ(r.delta, 1.0);
    EXPECT_EQ(r.n_steps, 1);
    EXPECT_DOUBLE_EQ(r.beta, 1.5);
    EXPECT_NEAR(r.sigma_assigned, std::min(sigma0, 1.0), 1e-15);
    EXPECT_TRUE(r.per_step_checks.empty());
  }
}

TEST(Schedule, StaircaseMatchesFormulaAndIsMonotone) {
  const double c1 = 0.05;
  const double c2 = 0.003;
  const double n0 = 0.7;
  const double delta = 1.0 / (8.0 * c1 * n0);
  double prev = INFINITY;
  for (double T = 0.1; T < 500.0; T *= 1.07) {
    const ScheduleResult r = schedule_sigma(T, 0.5, c1, c2, 2.0, n0);
    const int n = static_cast<int>(std::floor(T / delta));
    EXPECT_EQ(r.n_steps, n);
    EXPECT_NEAR(r.sigma_assigned, std::min(0.5, std::pow(2.0 * c1 / (c2 * (n + 1)), 2.0 / 3.0)), 1e-15);
    EXPECT_LE(r.sigma_assigned, prev);
    prev = r.sigma_assigned;
  }
}

TEST(Schedule, LargeHorizonExponentIsReciprocalBeta) {
  for (double alpha : {2.0, 3.0}) {
    const double t1 = 1e5;
    const double t2 = 1e7;
    const double s1 = schedule_sigma(t1, 0.5, 0.05, 0.003, alpha, 1.0).sigma_assigned;
    const double s2 = schedule_sigma(t2, 0.5, 0.05, 0.003, alpha, 1.0).sigma_assigned;
    const double slope = std::log(s2 / s1) / std::log(t2 / t1);
    EXPECT_NEAR(-slope, fractional_bound_exponents(alpha).mu, 1e-3) << alpha;
  }
}

TEST(Schedule, PerStepChecksWithTrajectory) {
  const Grid g(128, 32.0);
  const SpectralField u0 = 0.2 * make_initial_field(InitialData{}, g);
  const double n0 = gevrey_norm(u0, GevreyWeight{0.5, 1.0, SymbolKind::kCosh});
  const Trajectory traj = simulate(u0, ModelParams(2.0, g, 0.01, 20.0), GevreyWeight{}, 10);
  const ScheduleResult r = schedule_sigma(20.0, 0.5, 0.05, 0.003, 2.0, n0, &traj);
  ASSERT_FALSE(r.per_step_checks.empty());
  for (const StepCheck& c : r.per_step_checks) {
    EXPECT_GE(c.bound_lhs, 0.0);
    EXPECT_EQ(c.ok, c.doubling_ok && c.bound_lhs <= c.bound_rhs);
  }
  EXPECT_EQ(r.per_step_checks.front().k, 1);
}

TEST(Schedule, RejectsNonPositiveInputs) {
  EXPECT_THROW_KIND(schedule_sigma(0.0, 0.5, 1.0, 1.0, 2.0, 1.0), ErrorKind::kInvalidInput);
  EXPECT_THROW_KIND(schedule_sigma(1.0, 0.5, -1.0, 1.0, 2.0, 1.0), ErrorKind::kInvalidInput);
}

TEST(Calibration, SerializeParseRoundTrip) {
  Calibration c;
  c.seed = 99;
  c.grid_points = 256;
  c.domain_length = 64.0;
  c.bilinear_samples = 200;
  c.bilinear_band = 8;
  c.entries = {{2.0, 0.0509915283858785, 0.002833976308729644}, {3.0, 0.056, 0.0014}};
  c.c1_by_resolution = {{64, 0.05}, {128, 0.051}};
  const Calibration back = Calibration::parse(c.serialize());
  EXPECT_EQ(back.seed, 99u);
  EXPECT_EQ(back.grid_points, 256);
  EXPECT_EQ(back.domain_length, 64.0);
  ASSERT_EQ(back.entries.size(), 2u);
  EXPECT_EQ(back.at(2.0).c1, c.entries[0].c1);
  EXPECT_EQ(back.at(2.0).c2, c.entries[0].c2);
  EXPECT_EQ(back.at(3.0).c2, 0.0014);
  EXPECT_EQ(back.c1_by_resolution, c.c1_by_resolution);
  EXPECT_EQ(back.serialize(), c.serialize());
  EXPECT_THROW_KIND(back.at(2.5), ErrorKind::kInvalidInput);
}

TEST(Calibration, ShippedFileLoads) {
  const Calibration c = Calibration::load(GEVREY_BBM_SOURCE_DIR "/data/calibration.cfg");
  EXPECT_GT(c.at(2.0).c1, 0.0);
  EXPECT_GT(c.at(2.0).c2, 0.0);
  EXPECT_GT(c.at(3.0).c1, 0.0);
  EXPECT_GT(c.at(3.0).c2, 0.0);
}

}  // namespace
}  // namespace gevrey_bbm
