#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include "gevrey_bbm/algebra_identities.h"
#include "gevrey_bbm/analytics.h"
#include "gevrey_bbm/evolution.h"
#include "gevrey_bbm/norms.h"
#include "internal.h"

namespace gevrey_bbm::cli {
namespace {

Json norm_json(const NormReport& r) {
  return {{"l2", r.l2},         {"h1", r.h1},         {"h_alpha_half", r.h_alpha_half},
          {"gevrey", r.gevrey}, {"energy", r.energy}, {"h1_invariant", r.h1_invariant}};
}

Json optional_number(std::optional<double> v) { return v ? Json(*v) : Json(nullptr); }

double relative_drift(double first, double last) {
  return first != 0.0 ? std::abs(last - first) / std::abs(first) : std::abs(last - first);
}

std::optional<double> sigma_estimate(const SpectralField& state, double noise_floor) {
  try {
    const Band band = select_band(state, noise_floor);
    const RadiusEstimate est = estimate_radius(state, band.xi_lo, band.xi_hi, noise_floor);
    if (est.r2 >= kMinFitR2) return est.sigma_est;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kSpectrumTooThin) throw;
  }
  return std::nullopt;
}

Json conservation_json(const ConservationReport& r) {
  return {{"sigma", r.sigma},
          {"alpha", r.alpha},
          {"delta", r.delta},
          {"defect", r.defect},
          {"energy0", r.energy0},
          {"initial_norm", r.initial_norm},
          {"predicted_bound", optional_number(r.predicted_bound)},
          {"bound_satisfied", r.bound_satisfied}};
}

Json fit_json(const ScalingFit& f) {
  return {{"slope", f.slope},
          {"intercept", f.intercept},
          {"floor", f.floor},
          {"sigmas_used", f.sigmas_used},
          {"sigmas_dropped", f.sigmas_dropped},
          {"slope_at_least_1_4", f.slope >= 1.4},
          {"slope_at_least_1", f.slope >= 1.0}};
}

std::optional<Calibration> load_calibration(const KeyValueFile& v) {
  if (!is_set(v, "calibration_file")) return std::nullopt;
  return Calibration::load(v.get("calibration_file"));
}

Json calibration_json(const Calibration& cal) {
  Json entries = Json::array();
  for (const CalibrationEntry& e : cal.entries) {
    entries.push_back({{"alpha", e.alpha}, {"c1", e.c1}, {"c2", e.c2}});
  }
  Json res = Json::array();
  for (const auto& [n, c1] : cal.c1_by_resolution) res.push_back({{"n_points", n}, {"c1", c1}});
  return {{"seed", cal.seed},
          {"grid_points", cal.grid_points},
          {"domain_length", cal.domain_length},
          {"bilinear_samples", cal.bilinear_samples},
          {"bilinear_band", cal.bilinear_band},
          {"entries", entries},
          {"c1_by_resolution", res}};
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

}  // namespace

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const KeyValueFile& v = cfg.values;
  const ModelParams params = params_from(v);
  const GevreyWeight weight{v.get_double("sigma"), 0.5 * params.alpha, SymbolKind::kCosh};
  weight.validate();
  const double noise_floor = v.get_double("noise_floor");
  const SpectralField u0 = make_initial_field(data_from(v), params.grid);
  const auto dir = output_dir(v);

  const Trajectory traj =
      simulate(u0, params, weight, static_cast<int>(v.get_int("sample_every")));

  std::string csv = "t,l2,h1,energy,h1_invariant,sigma_est\n";
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const NormReport& r = traj.reports[i];
    const auto s = sigma_estimate(traj.states[i], noise_floor);
    csv += fmt::format("{},{},{},{},{},{}\n", csv_number(traj.times[i]), csv_number(r.l2),
                       csv_number(r.h1), csv_number(r.energy), csv_number(r.h1_invariant),
                       s ? csv_number(*s) : std::string());
  }
  write_text(dir / "simulate.csv", csv);

  Json doc = report_header(cfg);
  doc["samples"] = traj.times.size();
  doc["t_final"] = traj.times.back();
  doc["initial"] = norm_json(traj.reports.front());
  doc["final"] = norm_json(traj.reports.back());
  doc["drift"] = {
      {"h1_invariant_rel",
       relative_drift(traj.reports.front().h1_invariant, traj.reports.back().h1_invariant)},
      {"l2_rel", relative_drift(traj.reports.front().l2, traj.reports.back().l2)},
      {"energy_rel", relative_drift(traj.reports.front().energy, traj.reports.back().energy)}};
  doc["csv"] = "simulate.csv";
  write_json(dir / "simulate.json", doc);
  out << fmt::format("simulate: {} samples to t = {} written to {}\n", traj.times.size(),
                     traj.times.back(), dir.string());
  return kExitOk;
}

int cmd_verify_identities(const RunConfig& cfg, std::ostream& out) {
  const KeyValueFile& v = cfg.values;
  const auto seed = v.get_uint64("seed");
  const double range = v.get_double("triad_range");
  const auto dir = output_dir(v);

  const IdentityReport rep =
      verify_factor_identity(static_cast<int>(v.get_int("k_max")),
                             static_cast<int>(v.get_int("coordinate_range")),
                             static_cast<int>(v.get_int("symbolic_k_max")));
  Json special = Json::array();
  for (const SpecialCase& c : rep.special_cases) {
    special.push_back({{"k", c.k}, {"label", c.label}, {"holds", c.holds}});
  }

  Json per_sigma = Json::array();
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  const int fab_samples = static_cast<int>(v.get_int("fab_samples"));
  for (double sigma : list_from(v, "fab_sigmas")) {
    const FabCalibration cal = check_fab_bound(fab_samples, sigma, range, seed);
    per_sigma.push_back(
        {{"sigma", sigma}, {"max_ratio", cal.max_ratio}, {"skipped", cal.skipped}});
    lo = std::min(lo, cal.max_ratio);
    hi = std::max(hi, cal.max_ratio);
  }
  const PsiCalibration psi_cal =
      calibrate_psi_constant(static_cast<int>(v.get_int("psi_samples")), range, seed);

  Json doc = report_header(cfg);
  doc["identity"] = {{"k_max", rep.k_max},
                     {"coordinate_range", rep.coordinate_range},
                     {"triads_tested", rep.triads_tested},
                     {"all_equal", rep.all_equal},
                     {"max_defect", rep.max_defect.get_str()},
                     {"symbolic_k_max", rep.symbolic_k_max},
                     {"symbolic_equal", rep.symbolic_equal},
                     {"special_cases", special}};
  doc["fab_bound"] = {{"samples", fab_samples},
                      {"range", range},
                      {"per_sigma", per_sigma},
                      {"stability_factor", lo > 0.0 ? hi / lo : 0.0}};
  doc["psi_constant"] = {
      {"samples", psi_cal.samples}, {"range", psi_cal.range}, {"max_ratio", psi_cal.max_ratio}};
  write_json(dir / "verify_identities.json", doc);
  out << fmt::format("verify-identities: {} triads, k = 1..{}, all equal\n", rep.triads_tested,
                     rep.k_max);
  return kExitOk;
}

int cmd_conservation(const RunConfig& cfg, std::ostream& out) {
  const KeyValueFile& v = cfg.values;
  ModelParams params = params_from(v);
  const InitialData data = data_from(v);
  const SpectralField u0 = make_initial_field(data, params.grid);
  const std::vector<double> sigmas = list_from(v, "sigma_list");
  for (double s : sigmas) {
    if (!(s >= 0.0)) throw_invalid_input("sigma_list entries must be >= 0");
  }
  const auto dir = output_dir(v);

  std::optional<Calibration> cal;
  std::string cal_source;
  if (v.get_bool("calibrate", false)) {
    CalibrationSuiteOptions opt;
    opt.grid = params.grid;
    opt.data = data;
    opt.dt = params.dt;
    opt.alphas = list_from(v, "calib_alphas");
    opt.sigmas = list_from(v, "calib_sigmas");
    opt.bilinear_samples = static_cast<int>(v.get_int("bilinear_samples"));
    opt.bilinear_band = static_cast<int>(v.get_int("bilinear_band"));
    opt.resolutions.clear();
    for (double n : list_from(v, "resolutions")) opt.resolutions.push_back(static_cast<int>(n));
    opt.seed = v.get_uint64("seed");
    cal = run_calibration_suite(opt);
    cal->save((dir / "calibration.cfg").string());
    cal_source = (dir / "calibration.cfg").string();
  } else {
    cal = load_calibration(v);
    if (cal) cal_source = v.get("calibration_file");
  }
  std::optional<double> c1;
  std::optional<double> c2;
  if (cal) {
    c1 = cal->at(params.alpha).c1;
    c2 = cal->at(params.alpha).c2;
  }

  double delta = v.get_double("delta");
  if (!(delta > 0.0)) {
    if (!c1) throw_invalid_input("delta must be given when no calibration is available");
    delta = lifespan(u0, GevreyWeight{max_of(sigmas)}, params.alpha, *c1);
  }
  params.t_end = delta;

  const ConservationReport base = measure_defect(u0, 0.0, delta, params);
  const double floor = std::max(100.0 * base.defect, 1e-13 * base.energy0);
  std::vector<ConservationReport> reports;
  for (double s : sigmas) {
    if (s > 0.0) reports.push_back(measure_defect(u0, s, delta, params, c2));
  }

  const long every = std::max(1L, v.get_int("series_every"));
  std::string csv = "sigma,t,energy\n";
  auto add_series = [&](const ConservationReport& r) {
    const auto& es = r.energy_series;
    for (std::size_t i = 0; i < es.size(); ++i) {
      if (i % static_cast<std::size_t>(every) != 0 && i + 1 != es.size()) continue;
      csv += fmt::format("{},{},{}\n", csv_number(r.sigma), csv_number(es[i].first),
                         csv_number(es[i].second));
    }
  };
  add_series(base);
  for (const ConservationReport& r : reports) add_series(r);
  write_text(dir / "conservation_energy.csv", csv);

  Json doc = report_header(cfg);
  doc["alpha"] = params.alpha;
  doc["delta"] = delta;
  doc["calibration"] = cal ? Json{{"source", cal_source},
                                  {"c1", *c1},
                                  {"c2", *c2},
                                  {"constants", calibration_json(*cal)}}
                           : Json(nullptr);
  doc["sigma_zero"] = {{"defect", base.defect},
                       {"energy0", base.energy0},
                       {"relative", base.defect / base.energy0},
                       {"below_1e-8", base.defect <= 1e-8 * base.energy0}};
  Json reps = Json::array();
  bool all_bounded = true;
  for (const ConservationReport& r : reports) {
    reps.push_back(conservation_json(r));
    all_bounded = all_bounded && r.bound_satisfied;
  }
  doc["reports"] = reps;
  doc["all_bounds_satisfied"] = all_bounded;
  doc["fit"] = nullptr;
  // A single sigma is a point measurement; two or more ask for a slope.
  if (reports.size() >= 2) doc["fit"] = fit_json(fit_defect_scaling(reports, floor));
  doc["csv"] = "conservation_energy.csv";
  write_json(dir / "conservation.json", doc);
  out << fmt::format("conservation: delta = {}, {} sigma values", delta, reports.size());
  if (reports.size() >= 2) out << fmt::format(", slope {:.4f}", doc["fit"]["slope"].get<double>());
  out << "\n";
  return kExitOk;
}

int cmd_radius(const RunConfig& cfg, std::ostream& out) {
  const KeyValueFile& v = cfg.values;
  const ModelParams params = params_from(v);
  const GevreyWeight weight{v.get_double("sigma"), 0.5 * params.alpha, SymbolKind::kCosh};
  weight.validate();
  const SpectralField u0 = make_initial_field(data_from(v), params.grid);
  const auto dir = output_dir(v);

  const Trajectory traj =
      simulate(u0, params, weight, static_cast<int>(v.get_int("sample_every")));
  const RadiusFit fit = track_radius(traj, v.get_double("noise_floor"), v.get_double("t_min"));

  std::string csv = "t,sigma_est,r2,xi_lo,xi_hi,valid,check_ok\n";
  Json samples = Json::array();
  int valid = 0;
  for (const RadiusSample& s : fit.samples) {
    csv += fmt::format("{},{},{},{},{},{},{}\n", csv_number(s.t), csv_number(s.sigma_est),
                       csv_number(s.r2), csv_number(s.band.xi_lo), csv_number(s.band.xi_hi),
                       s.valid ? "true" : "false", s.check_ok ? "true" : "false");
    samples.push_back({{"t", s.t},
                       {"sigma_est", s.sigma_est},
                       {"r2", s.r2},
                       {"valid", s.valid},
                       {"check_ok", s.check_ok}});
    valid += s.valid ? 1 : 0;
  }
  write_text(dir / "radius.csv", csv);

  Json doc = report_header(cfg);
  doc["mu_fit"] = fit.mu_fit;
  doc["c_fit"] = fit.c_fit;
  doc["mu_theory"] = fit.mu_theory;
  doc["c_check"] = fit.c_check;
  doc["t_min"] = fit.t_min;
  doc["noise_floor"] = fit.noise_floor;
  doc["check_passed"] = fit.check_passed;
  doc["valid_samples"] = valid;
  doc["samples"] = samples;
  doc["csv"] = "radius.csv";
  write_json(dir / "radius.json", doc);
  out << fmt::format("radius: mu_fit = {:.4f}, lower-bound check {}\n", fit.mu_fit,
                     fit.check_passed ? "passed" : "FAILED");
  return kExitOk;
}

int cmd_schedule(const RunConfig& cfg, std::ostream& out) {
  const KeyValueFile& v = cfg.values;
  const double alpha = v.get_double("alpha");
  const double sigma0 = v.get_double("sigma0");
  const std::vector<double> horizons = list_from(v, "horizons");
  const auto dir = output_dir(v);

  double c1 = 0.0;
  double c2 = 0.0;
  std::string source = "config";
  if (is_set(v, "c1") && is_set(v, "c2")) {
    c1 = v.get_double("c1");
    c2 = v.get_double("c2");
  } else {
    const auto cal = load_calibration(v);
    if (!cal) throw_invalid_input("c1 and c2 must be given when no calibration file is set");
    c1 = is_set(v, "c1") ? v.get_double("c1") : cal->at(alpha).c1;
    c2 = is_set(v, "c2") ? v.get_double("c2") : cal->at(alpha).c2;
    source = v.get("calibration_file");
  }

  const Grid grid = grid_from(v);
  const SpectralField u0 = make_initial_field(data_from(v), grid);
  const GevreyWeight w0{sigma0, 0.5 * alpha, SymbolKind::kCosh};
  const double n0 = is_set(v, "initial_norm") ? v.get_double("initial_norm") : gevrey_norm(u0, w0);

  std::optional<Trajectory> traj;
  if (v.get_bool("check_trajectory", false)) {
    const ModelParams params(alpha, grid, v.get_double("dt"), max_of(horizons));
    traj = simulate(u0, params, w0, static_cast<int>(v.get_int("sample_every")));
  }

  Json entries = Json::array();
  std::vector<double> ts;
  std::vector<double> ss;
  bool all_ok = true;
  double beta = 0.0;
  for (double T : horizons) {
    const ScheduleResult r =
        schedule_sigma(T, sigma0, c1, c2, alpha, n0, traj ? &*traj : nullptr);
    beta = r.beta;
    Json checks = Json::array();
    for (const StepCheck& c : r.per_step_checks) {
      checks.push_back({{"k", c.k},
                        {"bound_lhs", c.bound_lhs},
                        {"bound_rhs", c.bound_rhs},
                        {"doubling_ok", c.doubling_ok},
                        {"ok", c.ok}});
      all_ok = all_ok && c.ok;
    }
    entries.push_back({{"T", T},
                       {"n_steps", r.n_steps},
                       {"delta", r.delta},
                       {"beta", r.beta},
                       {"sigma_assigned", r.sigma_assigned},
                       {"per_step_checks", checks}});
    if (r.sigma_assigned < sigma0) {
      ts.push_back((r.n_steps + 1.0) * r.delta);
      ss.push_back(r.sigma_assigned);
    }
  }

  Json doc = report_header(cfg);
  doc["alpha"] = alpha;
  doc["sigma0"] = sigma0;
  doc["c1"] = c1;
  doc["c2"] = c2;
  doc["constants_source"] = source;
  doc["initial_norm"] = n0;
  doc["exponent_expected"] = 1.0 / beta;
  doc["exponent_measured"] = nullptr;
  if (ts.size() >= 2) {
    // sigma ~ (n+1)^{-1/beta}, so log sigma against log((n+1) delta) has
    // slope exactly -1/beta on the decaying branch.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double x = std::log(ts[i]);
      const double y = std::log(ss[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double m = static_cast<double>(ts.size());
    doc["exponent_measured"] = -(m * sxy - sx * sy) / (m * sxx - sx * sx);
  }
  doc["trajectory_checks_passed"] = traj ? Json(all_ok) : Json(nullptr);
  doc["entries"] = entries;
  write_json(dir / "schedule.json", doc);
  out << fmt::format("schedule: {} horizons, exponent 1/beta = {:.4f}\n", horizons.size(),
                     1.0 / beta);
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const KeyValueFile& v = cfg.values;
  const Grid grid = grid_from(v);
  const SpectralField u0 = make_initial_field(data_from(v), grid);
  const std::vector<double> alphas = list_from(v, "alpha_list");
  const std::vector<double> sigmas = list_from(v, "sigma_list");
  for (double s : sigmas) {
    if (!(s > 0.0)) throw_invalid_input("sigma_list entries must be positive");
  }
  const double dt = v.get_double("dt");
  const long jobs = v.get_int("jobs");
  if (jobs < 1) throw_invalid_input("jobs must be >= 1");
  const auto dir = output_dir(v);
  const auto cal = load_calibration(v);

  struct Task {
    double alpha;
    double sigma;  // 0 for the discretization floor run
    double delta;
    std::optional<double> c2;
    ConservationReport report;
  };
  std::vector<Task> tasks;
  std::map<double, double> deltas;
  for (double a : alphas) {
    double delta = v.get_double("delta");
    std::optional<double> c2;
    if (cal) c2 = cal->at(a).c2;
    if (!(delta > 0.0)) {
      if (!cal) throw_invalid_input("delta must be given when no calibration is available");
      delta = lifespan(u0, GevreyWeight{max_of(sigmas)}, a, cal->at(a).c1);
    }
    deltas[a] = delta;
    tasks.push_back({a, 0.0, delta, std::nullopt, {}});
    for (double s : sigmas) tasks.push_back({a, s, delta, c2, {}});
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        Task& t = tasks[i];
        const ModelParams params(t.alpha, grid, dt, t.delta);
        t.report = measure_defect(u0, t.sigma, t.delta, params, t.c2);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const auto n_threads = static_cast<std::size_t>(std::min<long>(jobs, static_cast<long>(tasks.size())));
  for (std::size_t i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  // Merge keyed by (alpha, sigma); std::map ordering makes the output
  // independent of task completion order.
  Json results = Json::object();
  Json fits = Json::object();
  for (double a : alphas) {
    const std::string akey = fmt::format("alpha={}", a);
    std::vector<ConservationReport> reps;
    double floor = 0.0;
    for (const Task& t : tasks) {
      if (t.alpha != a) continue;
      if (t.sigma == 0.0) {
        floor = std::max(100.0 * t.report.defect, 1e-13 * t.report.energy0);
        results[akey]["sigma=0"] = conservation_json(t.report);
      } else {
        reps.push_back(t.report);
        results[akey][fmt::format("sigma={}", t.sigma)] = conservation_json(t.report);
      }
    }
    Json fit;
    try {
      fit = fit_json(fit_defect_scaling(reps, floor));
      fit["beta"] = fractional_bound_exponents(a).beta;
      fit["delta"] = deltas[a];
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kInsufficientData) throw;
      fit = {{"error", e.what()}};
    }
    fits[akey] = fit;
  }

  Json doc = report_header(cfg);
  doc["tasks"] = tasks.size();
  doc["results"] = results;
  doc["fits"] = fits;
  doc["calibration"] = cal ? calibration_json(*cal) : Json(nullptr);
  write_json(dir / "sweep.json", doc);
  out << fmt::format("sweep: {} tasks over {} alpha values\n", tasks.size(), alphas.size());
  return kExitOk;
}

}  // namespace gevrey_bbm::cli
