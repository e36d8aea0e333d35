#include "gevrey_bbm/analytics.h"

#include <fmt/format.h>

#include <Eigen/Dense>
#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>
#include <numbers>

#include "gevrey_bbm/algebra_identities.h"
#include "gevrey_bbm/config.h"
#include "gevrey_bbm/initial_data.h"
#include "gevrey_bbm/norms.h"

namespace gevrey_bbm {
namespace {

struct LinearFit {
  Eigen::VectorXd coef;
  double r2 = 0.0;
};

LinearFit least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  LinearFit fit;
  fit.coef = a.colPivHouseholderQr().solve(b);
  const Eigen::VectorXd resid = b - a * fit.coef;
  const double ss_res = resid.squaredNorm();
  const double ss_tot = (b.array() - b.mean()).matrix().squaredNorm();
  fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

SpectralField derivative(const SpectralField& field) {
  SpectralField out = field;
  const Grid& g = field.grid();
  auto c = out.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= Complex(0.0, g.wavenumber_at(i));
  return out;
}

SpectralField without_nyquist(const SpectralField& field) {
  SpectralField out = field;
  out.zero_nyquist();
  return out;
}

// (value, sum of |integrand|) of -2 int u u_x I^2 u on the padded grid.
std::pair<double, double> physical_rate_and_scale(const SpectralField& field, double sigma) {
  const Grid& g = field.grid();
  const SpectralField padded = zero_pad(without_nyquist(field), 2 * g.n_points());
  const GevreyWeight w{sigma, 0.0, SymbolKind::kCosh};
  const std::vector<double> u = inverse_transform(padded);
  const std::vector<double> ux = inverse_transform(derivative(padded));
  const std::vector<double> i2u = inverse_transform(apply_I(apply_I(padded, w), w));
  const double h = g.domain_length() / static_cast<double>(u.size());
  double sum = 0.0;
  double abs_sum = 0.0;
  for (std::size_t m = 0; m < u.size(); ++m) {
    const double v = u[m] * ux[m] * i2u[m];
    sum += v;
    abs_sum += std::abs(v);
  }
  return {-2.0 * h * sum, 2.0 * h * abs_sum};
}

double mean_log_slope(const std::vector<double>& x, const std::vector<double>& y,
                      double* intercept) {
  Eigen::MatrixXd a(static_cast<Eigen::Index>(x.size()), 2);
  Eigen::VectorXd b(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    a(static_cast<Eigen::Index>(i), 0) = std::log(x[i]);
    a(static_cast<Eigen::Index>(i), 1) = 1.0;
    b(static_cast<Eigen::Index>(i)) = std::log(y[i]);
  }
  const LinearFit fit = least_squares(a, b);
  if (intercept) *intercept = fit.coef(1);
  return fit.coef(0);
}

std::string alpha_key(const char* prefix, double alpha) {
  return fmt::format("{}_alpha_{}", prefix, alpha);
}

}  // namespace

double trilinear_rate_physical(const SpectralField& field, double sigma) {
  if (!(sigma >= 0.0)) throw_invalid_input("sigma must be >= 0");
  return physical_rate_and_scale(field, sigma).first;
}

double trilinear_rate_triads(const SpectralField& field, double sigma) {
  if (!(sigma >= 0.0)) throw_invalid_input("sigma must be >= 0");
  const Grid& g = field.grid();
  const int lo = g.min_mode();
  const int hi = g.max_mode() - 1;  // Nyquist excluded
  std::vector<int> active;
  for (int j = lo; j <= hi; ++j) {
    if (field.coeff(j) != Complex(0.0, 0.0)) active.push_back(j);
  }
  Complex sum(0.0, 0.0);
  if (sigma > 0.0) {
    for (int j1 : active) {
      for (int j2 : active) {
        const int j3 = -j1 - j2;
        if (j3 < lo || j3 > hi) continue;
        const Complex c3 = field.coeff(j3);
        if (c3 == Complex(0.0, 0.0)) continue;
        const double xi1 = g.wavenumber(j1);
        const double xi2 = g.wavenumber(j2);
        const double s = series_symmetrized(RealTriad{xi1, xi2, -(xi1 + xi2)}, sigma).value;
        sum += s * field.coeff(j1) * field.coeff(j2) * c3;
      }
    }
  }
  const double l = g.domain_length();
  return (Complex(0.0, 1.0 / 6.0) * sum / (l * l)).real();
}

double trilinear_defect_rate(const SpectralField& field, double sigma, double alpha) {
  if (!(alpha > 1.0)) throw_invalid_input("alpha must be > 1");
  const auto [physical, scale] = physical_rate_and_scale(field, sigma);
  if (field.grid().n_points() <= kBruteForceMaxPoints) {
    const double triads = trilinear_rate_triads(field, sigma);
    const double diff = std::abs(physical - triads);
    const double tol =
        kCrossCheckRelTol * std::max(std::abs(physical), std::abs(triads)) + 1e-12 * scale;
    if (!(diff <= tol)) {
      throw Error(ErrorKind::kCrossCheckFailure,
                  fmt::format("trilinear rate: physical {:.17g} vs triad sum {:.17g} "
                              "(|diff| {:.3g}, tolerance {:.3g})",
                              physical, triads, diff, tol));
    }
  }
  return physical;
}

ConservationReport measure_defect(const SpectralField& u0, double sigma, double delta,
                                  const ModelParams& params, std::optional<double> c2) {
  if (!(sigma >= 0.0)) throw_invalid_input("sigma must be >= 0");
  if (!(delta > 0.0)) throw_invalid_input("delta must be positive");
  ModelParams window = params;
  window.t_end = delta;

  ConservationReport rep;
  rep.sigma = sigma;
  rep.delta = delta;
  rep.alpha = params.alpha;
  rep.initial_norm = gevrey_norm(u0, GevreyWeight{sigma, 0.5 * params.alpha, SymbolKind::kCosh});
  double e_max = -std::numeric_limits<double>::infinity();
  simulate(u0, window, GevreyWeight{sigma, 0.5 * params.alpha, SymbolKind::kCosh}, INT_MAX,
           [&](double t, const SpectralField& state) {
             const double e = energy(state, sigma, params.alpha);
             rep.energy_series.emplace_back(t, e);
             e_max = std::max(e_max, e);
           });
  rep.energy0 = rep.energy_series.front().second;
  rep.defect = e_max - rep.energy0;
  if (c2) {
    const double beta = fractional_bound_exponents(params.alpha).beta;
    rep.predicted_bound = *c2 * delta * std::pow(sigma, beta) * std::pow(rep.initial_norm, 3);
    rep.bound_satisfied = rep.defect <= *rep.predicted_bound;
  }
  return rep;
}

ScalingFit fit_defect_scaling(const std::vector<ConservationReport>& reports, double floor) {
  ScalingFit fit;
  fit.floor = floor;
  fit.reports = reports;
  std::vector<double> x;
  std::vector<double> y;
  for (const ConservationReport& r : reports) {
    if (r.sigma <= 0.0) continue;
    if (r.defect > floor) {
      fit.sigmas_used.push_back(r.sigma);
      x.push_back(r.sigma);
      y.push_back(r.defect);
    } else {
      fit.sigmas_dropped.push_back(r.sigma);
    }
  }
  if (static_cast<int>(x.size()) < kMinScalingPoints) {
    throw Error(ErrorKind::kInsufficientData,
                fmt::format("{} usable sigma values above the floor {:.3g}; need {}", x.size(),
                            floor, kMinScalingPoints));
  }
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  const double decades = std::log10(*hi / *lo);
  if (decades < kMinSigmaDecades) {
    throw Error(ErrorKind::kInsufficientData,
                fmt::format("usable sigma values span {:.3f} decades; need {}", decades,
                            kMinSigmaDecades));
  }
  fit.slope = mean_log_slope(x, y, &fit.intercept);
  return fit;
}

ScalingFit defect_scaling_fit(const SpectralField& u0, const std::vector<double>& sigma_list,
                              double delta, const ModelParams& params,
                              std::optional<double> c2) {
  const ConservationReport base = measure_defect(u0, 0.0, delta, params);
  const double floor = std::max(100.0 * base.defect, 1e-13 * base.energy0);
  std::vector<ConservationReport> reports;
  reports.reserve(sigma_list.size());
  for (double s : sigma_list) {
    if (!(s > 0.0)) throw_invalid_input("sigma list entries must be positive");
    reports.push_back(measure_defect(u0, s, delta, params, c2));
  }
  return fit_defect_scaling(reports, floor);
}

BilinearCalibration calibrate_bilinear_constant(int samples, const GevreyWeight& weight,
                                                double alpha, const Grid& grid,
                                                std::uint64_t seed, int band) {
  if (samples < kMinBilinearSamples) {
    throw_invalid_input(fmt::format("need at least {} samples", kMinBilinearSamples));
  }
  if (!(alpha > 1.0)) throw_invalid_input("alpha must be > 1");
  if (2 * band > grid.dealias_cutoff()) {
    throw_invalid_input("grid too coarse to resolve the product of two band-limited fields");
  }
  const GevreyWeight metric{weight.sigma, 0.5 * alpha, SymbolKind::kCosh};
  BilinearCalibration cal;
  for (int s = 0; s < samples; ++s) {
    const auto k = static_cast<std::uint64_t>(s);
    const SpectralField u = random_band_limited_field(grid, band, seed + 2 * k);
    const SpectralField v = random_band_limited_field(grid, band, seed + 2 * k + 1);
    const double nu = gevrey_norm(u, metric);
    const double nv = gevrey_norm(v, metric);
    if (nu == 0.0 || nv == 0.0) {
      ++cal.pairs_skipped;
      continue;
    }
    std::vector<double> pu = inverse_transform(u);
    const std::vector<double> pv = inverse_transform(v);
    for (std::size_t m = 0; m < pu.size(); ++m) pu[m] *= pv[m];
    const SpectralField uv = dealias(forward_transform(pu, grid));
    const double num = gevrey_norm(apply_phi(uv, alpha), metric);
    cal.constant = std::max(cal.constant, num / (nu * nv));
    ++cal.pairs_used;
  }
  return cal;
}

Band select_band(const SpectralField& field, double noise_floor) {
  const Grid& g = field.grid();
  const double mx = field.max_abs();
  if (!(mx > 0.0)) throw Error(ErrorKind::kSpectrumTooThin, "field is identically zero");
  const int top = g.max_mode() - 1;
  int lo = 0;
  for (int j = 1; j <= top; ++j) {
    if (std::abs(field.coeff(j)) <= kBandTopFraction * mx) {
      lo = j;
      break;
    }
  }
  int hi = 0;
  for (int j = top; j >= 1; --j) {
    if (std::abs(field.coeff(j)) >= 10.0 * noise_floor * mx) {
      hi = j;
      break;
    }
  }
  if (lo == 0 || hi <= lo) {
    throw Error(ErrorKind::kSpectrumTooThin,
                "no decaying band between the spectral peak and the noise floor");
  }
  return {g.wavenumber(lo), g.wavenumber(hi)};
}

RadiusEstimate estimate_radius(const SpectralField& field, double xi_lo, double xi_hi,
                               double noise_floor) {
  const Grid& g = field.grid();
  const double mx = field.max_abs();
  const double slack = 1e-9 * (2.0 * std::numbers::pi / g.domain_length());
  std::vector<double> xi;
  std::vector<double> logc;
  if (mx > 0.0) {
    for (int j = 1; j < g.max_mode(); ++j) {
      const double k = g.wavenumber(j);
      if (k < xi_lo - slack || k > xi_hi + slack) continue;
      const double c = std::abs(field.coeff(j));
      if (c < 10.0 * noise_floor * mx) continue;
      xi.push_back(k);
      logc.push_back(std::log(c));
    }
  }
  if (static_cast<int>(xi.size()) < kMinRadiusModes) {
    throw Error(ErrorKind::kSpectrumTooThin,
                fmt::format("{} usable modes in [{:.4g}, {:.4g}]; need {}", xi.size(), xi_lo,
                            xi_hi, kMinRadiusModes));
  }
  const auto rows = static_cast<Eigen::Index>(xi.size());
  Eigen::MatrixXd a(rows, 3);
  Eigen::VectorXd b(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto u = static_cast<std::size_t>(i);
    a(i, 0) = 1.0;
    a(i, 1) = -xi[u];
    a(i, 2) = -std::log(xi[u]);
    b(i) = logc[u];
  }
  const LinearFit fit = least_squares(a, b);
  RadiusEstimate est;
  est.sigma_est = fit.coef(1);
  est.prefactor_power = fit.coef(2);
  est.r2 = fit.r2;
  est.modes_used = static_cast<int>(rows);
  return est;
}

RadiusFit track_radius(const Trajectory& traj, double noise_floor, double t_min) {
  if (traj.states.size() < 10) {
    throw Error(ErrorKind::kInsufficientData,
                fmt::format("trajectory has {} stored states; need at least 10",
                            traj.states.size()));
  }
  RadiusFit fit;
  fit.t_min = t_min;
  fit.noise_floor = noise_floor;
  fit.mu_theory = fractional_bound_exponents(traj.params.alpha).mu;

  std::vector<double> ts;
  std::vector<double> ss;
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    RadiusSample s;
    s.t = traj.times[i];
    try {
      s.band = select_band(traj.states[i], noise_floor);
      const RadiusEstimate est =
          estimate_radius(traj.states[i], s.band.xi_lo, s.band.xi_hi, noise_floor);
      s.sigma_est = est.sigma_est;
      s.r2 = est.r2;
      s.valid = est.r2 >= kMinFitR2 && est.sigma_est > 0.0;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kSpectrumTooThin) throw;
    }
    if (s.valid && s.t >= t_min && s.t > 0.0) {
      ts.push_back(s.t);
      ss.push_back(s.sigma_est);
    }
    fit.samples.push_back(s);
  }
  if (ts.size() < 2) {
    throw Error(ErrorKind::kNoFit,
                fmt::format("{} valid radius samples at t >= {}; need 2", ts.size(), t_min));
  }
  double log_c = 0.0;
  fit.mu_fit = -mean_log_slope(ts, ss, &log_c);
  fit.c_fit = std::exp(log_c);
  fit.c_check = ss.front() * std::pow(ts.front(), fit.mu_theory);

  fit.check_passed = true;
  for (RadiusSample& s : fit.samples) {
    if (!s.valid || s.t < t_min || s.t <= 0.0) continue;
    s.check_ok = s.sigma_est * std::pow(s.t, fit.mu_theory) >= fit.c_check * (1.0 - 1e-12);
    fit.check_passed = fit.check_passed && s.check_ok;
  }
  return fit;
}

ScheduleResult schedule_sigma(double T, double sigma0, double C1, double C2, double alpha,
                              double initial_norm, const Trajectory* trajectory) {
  if (!(T > 0.0) || !(sigma0 > 0.0) || !(C1 > 0.0) || !(C2 > 0.0) || !(initial_norm > 0.0)) {
    throw_invalid_input("schedule inputs must be positive");
  }
  ScheduleResult res;
  res.horizon_T = T;
  res.beta = fractional_bound_exponents(alpha).beta;
  res.delta = 1.0 / (8.0 * C1 * initial_norm);
  res.n_steps = static_cast<int>(std::floor(T / res.delta));
  res.sigma_assigned =
      std::min(sigma0, std::pow(2.0 * C1 / (C2 * (res.n_steps + 1.0)), 1.0 / res.beta));

  if (trajectory == nullptr || trajectory->states.empty()) return res;

  const GevreyWeight metric{res.sigma_assigned, 0.5 * alpha, SymbolKind::kCosh};
  const double t_last = trajectory->times.back();
  const double n0 = initial_norm;
  for (int k = 1; k <= res.n_steps + 1; ++k) {
    const double end = std::min(k * res.delta, T);
    if (end > t_last * (1.0 + 1e-12)) break;
    double sup = 0.0;
    for (std::size_t i = 0; i < trajectory->states.size(); ++i) {
      if (trajectory->times[i] > end * (1.0 + 1e-12)) break;
      sup = std::max(sup, gevrey_norm(trajectory->states[i], metric));
    }
    StepCheck c;
    c.k = k;
    c.bound_lhs = sup * sup;
    c.bound_rhs = n0 * n0 + 8.0 * k * C2 * res.delta * std::pow(res.sigma_assigned, res.beta) *
                                n0 * n0 * n0;
    c.doubling_ok = sup <= 2.0 * n0;
    c.ok = c.doubling_ok && c.bound_lhs <= c.bound_rhs;
    res.per_step_checks.push_back(c);
  }
  return res;
}

const CalibrationEntry& Calibration::at(double alpha) const {
  for (const CalibrationEntry& e : entries) {
    if (e.alpha == alpha) return e;
  }
  throw_invalid_input(fmt::format("calibration has no constants for alpha = {}", alpha));
}

std::string Calibration::serialize() const {
  KeyValueFile kv;
  kv.set("seed", std::to_string(seed));
  kv.set("grid_points", std::to_string(grid_points));
  kv.set("domain_length", fmt::format("{}", domain_length));
  kv.set("bilinear_samples", std::to_string(bilinear_samples));
  kv.set("bilinear_band", std::to_string(bilinear_band));
  std::string alphas;
  for (const CalibrationEntry& e : entries) {
    alphas += (alphas.empty() ? "" : ",") + fmt::format("{}", e.alpha);
    kv.set(alpha_key("c1", e.alpha), fmt::format("{}", e.c1));
    kv.set(alpha_key("c2", e.alpha), fmt::format("{}", e.c2));
  }
  kv.set("alphas", alphas);
  std::string ns;
  for (const auto& [n, c1] : c1_by_resolution) {
    ns += (ns.empty() ? "" : ",") + std::to_string(n);
    kv.set(fmt::format("c1_n_{}", n), fmt::format("{}", c1));
  }
  if (!ns.empty()) kv.set("resolutions", ns);
  return kv.serialize();
}

Calibration Calibration::parse(const std::string& text, const std::string& origin) {
  const KeyValueFile kv = KeyValueFile::parse(text, origin);
  Calibration cal;
  cal.seed = kv.get_uint64("seed");
  cal.grid_points = static_cast<int>(kv.get_int("grid_points"));
  cal.domain_length = kv.get_double("domain_length");
  cal.bilinear_samples = static_cast<int>(kv.get_int("bilinear_samples"));
  cal.bilinear_band = static_cast<int>(kv.get_int("bilinear_band"));
  for (double a : kv.get_double_list("alphas")) {
    cal.entries.push_back(
        {a, kv.get_double(alpha_key("c1", a)), kv.get_double(alpha_key("c2", a))});
  }
  if (kv.has("resolutions")) {
    for (double n : kv.get_double_list("resolutions")) {
      const int ni = static_cast<int>(n);
      cal.c1_by_resolution.emplace_back(ni, kv.get_double(fmt::format("c1_n_{}", ni)));
    }
  }
  return cal;
}

Calibration Calibration::load(const std::string& path) {
  const KeyValueFile kv = KeyValueFile::load(path);
  return parse(kv.serialize(), path);
}

Calibration run_calibration_suite(const CalibrationSuiteOptions& options) {
  if (options.alphas.empty() || options.sigmas.empty()) {
    throw_invalid_input("calibration suite needs at least one alpha and one sigma");
  }
  const double sigma_max = *std::max_element(options.sigmas.begin(), options.sigmas.end());
  const SpectralField u0 = make_initial_field(options.data, options.grid);

  Calibration cal;
  cal.seed = options.seed;
  cal.grid_points = options.grid.n_points();
  cal.domain_length = options.grid.domain_length();
  cal.bilinear_samples = options.bilinear_samples;
  cal.bilinear_band = options.bilinear_band;
  for (double alpha : options.alphas) {
    CalibrationEntry e;
    e.alpha = alpha;
    e.c1 = calibrate_bilinear_constant(options.bilinear_samples, GevreyWeight{sigma_max}, alpha,
                                       options.grid, options.seed, options.bilinear_band)
               .constant;
    const double delta = lifespan(u0, GevreyWeight{sigma_max}, alpha, e.c1);
    const double beta = fractional_bound_exponents(alpha).beta;
    ModelParams params(alpha, options.grid, options.dt, delta);
    for (double sigma : options.sigmas) {
      const ConservationReport r = measure_defect(u0, sigma, delta, params);
      e.c2 = std::max(e.c2, r.defect / (delta * std::pow(sigma, beta) *
                                        std::pow(r.initial_norm, 3)));
    }
    cal.entries.push_back(e);
  }
  for (int n : options.resolutions) {
    const Grid g(n, options.grid.domain_length());
    cal.c1_by_resolution.emplace_back(
        n, calibrate_bilinear_constant(options.bilinear_samples, GevreyWeight{sigma_max},
                                       options.alphas.front(), g, options.seed,
                                       options.bilinear_band)
               .constant);
  }
  return cal;
}

void Calibration::save(const std::string& path) const {
  KeyValueFile::parse(serialize()).save(path);
}

}  // namespace gevrey_bbm
