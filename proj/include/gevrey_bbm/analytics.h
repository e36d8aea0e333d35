#ifndef GEVREY_BBM_ANALYTICS_H_
#define GEVREY_BBM_ANALYTICS_H_

// Measurements built on the solver: growth of the I-weighted energy over a
// local window and its sigma scaling, the bilinear constant feeding the
// lifespan, the radius of analyticity read off the spectrum, and the sigma
// schedule of the global bootstrap.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gevrey_bbm/evolution.h"
#include "gevrey_bbm/initial_data.h"
#include "gevrey_bbm/multipliers.h"
#include "gevrey_bbm/rng.h"
#include "gevrey_bbm/spectral_core.h"

namespace gevrey_bbm {

// ---------------------------------------------------------------------------
// Energy defect

inline constexpr double kCrossCheckRelTol = 1e-6;
// Largest grid on which the O(n^2) triad sum is evaluated.
inline constexpr int kBruteForceMaxPoints = 128;

// dE/dt = -2 int u u_x I^2 u dx along the flow (independent of alpha; the
// linear part conserves E). Evaluated on a zero-padded grid so the cubic
// quadrature is exact.
double trilinear_rate_physical(const SpectralField& field, double sigma);

// The same rate as the symmetrized triad sum
//   (i/6) (1/L^2) sum_{j1+j2+j3=0} S(xi) c_{j1} c_{j2} c_{j3},
//   S(xi) = sum_{k>=1} (2 sigma)^{2k}/(2k)! (xi1^{2k+1} + xi2^{2k+1} + xi3^{2k+1}).
double trilinear_rate_triads(const SpectralField& field, double sigma);

// Physical-space rate; when n <= kBruteForceMaxPoints also evaluates the
// triad sum and throws CrossCheckFailure unless they agree to
// kCrossCheckRelTol. The Nyquist mode is dropped before either evaluation.
double trilinear_defect_rate(const SpectralField& field, double sigma, double alpha);

struct ConservationReport {
  double sigma = 0.0;
  double delta = 0.0;
  double alpha = 0.0;
  double energy0 = 0.0;
  // ||I u0||_{H^{alpha/2}}
  double initial_norm = 0.0;
  // sup_{[0, delta]} E(t) - E(0)
  double defect = 0.0;
  // C delta sigma^beta ||I u0||^3; absent without a calibrated C.
  std::optional<double> predicted_bound;
  bool bound_satisfied = true;
  std::vector<std::pair<double, double>> energy_series;
};

// Runs the flow over [0, delta] with params.dt and samples E every step.
ConservationReport measure_defect(const SpectralField& u0, double sigma, double delta,
                                  const ModelParams& params,
                                  std::optional<double> c2 = std::nullopt);

inline constexpr double kMinSigmaDecades = 1.4;
inline constexpr int kMinScalingPoints = 4;

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double floor = 0.0;
  std::vector<double> sigmas_used;
  std::vector<double> sigmas_dropped;
  std::vector<ConservationReport> reports;
};

// Least-squares slope of log(defect) against log(sigma). Defects at or below
// `floor` are dropped. Throws InsufficientData with fewer than
// kMinScalingPoints usable points or a sigma list spanning fewer than
// kMinSigmaDecades decades.
ScalingFit fit_defect_scaling(const std::vector<ConservationReport>& reports, double floor);

// Measures the defect at every sigma (and at sigma = 0 for the floor
// max(100 defect(0), 1e-13 E(0))) and fits the slope.
ScalingFit defect_scaling_fit(const SpectralField& u0, const std::vector<double>& sigma_list,
                              double delta, const ModelParams& params,
                              std::optional<double> c2 = std::nullopt);

// ---------------------------------------------------------------------------
// Bilinear constant

inline constexpr int kMinBilinearSamples = 100;
inline constexpr int kDefaultBilinearBand = 8;

struct BilinearCalibration {
  double constant = 0.0;
  int pairs_used = 0;
  int pairs_skipped = 0;
};

// max over random band-limited pairs of
//   ||phi(D) I(u v)||_{H^{alpha/2}} / (||I u||_{H^{alpha/2}} ||I v||_{H^{alpha/2}}).
// Pair s uses seeds seed + 2s and seed + 2s + 1.
BilinearCalibration calibrate_bilinear_constant(int samples, const GevreyWeight& weight,
                                                double alpha, const Grid& grid,
                                                std::uint64_t seed = kDefaultSeed,
                                                int band = kDefaultBilinearBand);

// ---------------------------------------------------------------------------
// Radius of analyticity

inline constexpr double kDefaultNoiseFloor = 1e-14;
inline constexpr double kBandTopFraction = 1e-2;
inline constexpr double kMinFitR2 = 0.98;
inline constexpr int kMinRadiusModes = 8;
inline constexpr double kDefaultTMin = 1.0;

struct Band {
  double xi_lo = 0.0;
  double xi_hi = 0.0;
};

// xi_lo is the first positive wavenumber where |c| has dropped to
// kBandTopFraction * max|c|; xi_hi the last one with |c| >= 10 noise_floor
// max|c|. Throws SpectrumTooThin if no such band exists.
Band select_band(const SpectralField& field, double noise_floor = kDefaultNoiseFloor);

struct RadiusEstimate {
  double sigma_est = 0.0;
  double r2 = 0.0;
  // Algebraic prefactor exponent p in |c(xi)| ~ A xi^{-p} exp(-sigma xi).
  double prefactor_power = 0.0;
  int modes_used = 0;
};

// Fits log|c_j| = a - sigma xi_j - p log xi_j over positive modes in
// [xi_lo, xi_hi] with |c_j| >= 10 noise_floor max|c|. Throws SpectrumTooThin
// with fewer than kMinRadiusModes usable modes.
RadiusEstimate estimate_radius(const SpectralField& field, double xi_lo, double xi_hi,
                               double noise_floor = kDefaultNoiseFloor);

struct RadiusSample {
  double t = 0.0;
  double sigma_est = 0.0;
  double r2 = 0.0;
  Band band;
  bool valid = false;
  // sigma_est >= c_check t^{-mu_theory}; only meaningful for valid samples
  // with t >= t_min.
  bool check_ok = true;
};

struct RadiusFit {
  std::vector<RadiusSample> samples;
  double mu_fit = 0.0;
  double c_fit = 0.0;
  double mu_theory = 0.0;
  double c_check = 0.0;
  double t_min = kDefaultTMin;
  double noise_floor = kDefaultNoiseFloor;
  bool check_passed = false;
};

// Estimates sigma at every stored state and fits sigma = c t^{-mu} over valid
// samples with t >= t_min. The pointwise lower-bound check uses the exponent
// mu of fractional_bound_exponents(alpha) and c_check calibrated at the
// earliest valid sample. Throws InsufficientData for fewer than 10 stored
// states and NoFit when fewer than two samples survive.
RadiusFit track_radius(const Trajectory& traj, double noise_floor = kDefaultNoiseFloor,
                       double t_min = kDefaultTMin);

// ---------------------------------------------------------------------------
// Sigma schedule

struct StepCheck {
  int k = 0;
  // sup_{[0, k delta]} ||I_sigma u||^2
  double bound_lhs = 0.0;
  // ||I_{sigma0} u0||^2 + 8 k C2 delta sigma^beta ||I_{sigma0} u0||^3
  double bound_rhs = 0.0;
  // sup_{[0, k delta]} ||I_sigma u|| <= 2 ||I_{sigma0} u0||
  bool doubling_ok = false;
  bool ok = false;
};

struct ScheduleResult {
  double horizon_T = 0.0;
  int n_steps = 0;
  double delta = 0.0;
  double beta = 0.0;
  double sigma_assigned = 0.0;
  std::vector<StepCheck> per_step_checks;
};

// delta = 1/(8 C1 ||I_{sigma0} u0||), n with T in [n delta, (n+1) delta),
// sigma = min(sigma0, (2 C1 / (C2 (n+1)))^{1/beta}). With a trajectory the
// induction bounds are checked for every k = 1..n+1 whose window
// [0, min(k delta, T)] the trajectory covers.
ScheduleResult schedule_sigma(double T, double sigma0, double C1, double C2, double alpha,
                              double initial_norm, const Trajectory* trajectory = nullptr);

// ---------------------------------------------------------------------------
// Calibration file

struct CalibrationEntry {
  double alpha = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

struct Calibration {
  std::uint64_t seed = kDefaultSeed;
  int grid_points = 0;
  double domain_length = 0.0;
  int bilinear_samples = 0;
  int bilinear_band = kDefaultBilinearBand;
  std::vector<CalibrationEntry> entries;
  // (n, C1) at alpha = 2, reported for resolution dependence.
  std::vector<std::pair<int, double>> c1_by_resolution;

  const CalibrationEntry& at(double alpha) const;

  std::string serialize() const;
  static Calibration parse(const std::string& text, const std::string& origin = "<string>");
  static Calibration load(const std::string& path);
  void save(const std::string& path) const;
};

struct CalibrationSuiteOptions {
  Grid grid{256, 64.0};
  InitialData data;
  double dt = 1e-3;
  std::vector<double> alphas{2.0, 3.0};
  std::vector<double> sigmas{0.4, 0.5};
  int bilinear_samples = 200;
  int bilinear_band = kDefaultBilinearBand;
  std::vector<int> resolutions{64, 128, 256};
  std::uint64_t seed = kDefaultSeed;
};

// For every alpha: C1 from calibrate_bilinear_constant at the largest suite
// sigma; delta the lifespan of the suite data with that C1; C2 the largest
// defect / (delta sigma^beta ||I u0||^3) over the suite sigmas. C1 is also
// recomputed on each resolution (same domain) for the first alpha.
Calibration run_calibration_suite(const CalibrationSuiteOptions& options);

}  // namespace gevrey_bbm

#endif  // GEVREY_BBM_ANALYTICS_H_
