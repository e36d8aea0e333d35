#include "gevrey_bbm/evolution.h"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <string>

namespace gevrey_bbm {
namespace {

void check_blowup(const SpectralField& state, double t) {
  if (!state.is_finite() || state.max_abs() > kBlowupThreshold) {
    throw BlowupError(t, "spectral coefficients left the finite range at t = " +
                             std::to_string(t));
  }
}

std::string describe(const PicardDiagnostics& d) {
  std::string msg = "Picard iteration did not reach tolerance after " +
                    std::to_string(d.iterations) + " iterations";
  if (!d.iterate_distances.empty()) {
    msg += " (last distance " + std::to_string(d.iterate_distances.back()) + ")";
  }
  return msg;
}

}  // namespace

NoConvergenceError::NoConvergenceError(PicardDiagnostics diagnostics)
    : Error(ErrorKind::kNoConvergence, describe(diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

SpectralField nonlinear_term(const SpectralField& field) {
  std::vector<double> u = inverse_transform(field);
  for (double& v : u) v *= v;
  SpectralField out = dealias(forward_transform(u, field.grid()));
  out.zero_nyquist();
  return out;
}

SpectralField rhs(const SpectralField& field, double alpha, bool linear_only) {
  SpectralField flux = field;
  if (!linear_only) flux += 0.5 * nonlinear_term(field);
  return -1.0 * apply_phi(flux, alpha);
}

SpectralField step_rk4(const SpectralField& field, double dt, double alpha, bool linear_only) {
  const SpectralField k1 = rhs(field, alpha, linear_only);
  const SpectralField k2 = rhs(field + (0.5 * dt) * k1, alpha, linear_only);
  const SpectralField k3 = rhs(field + (0.5 * dt) * k2, alpha, linear_only);
  const SpectralField k4 = rhs(field + dt * k3, alpha, linear_only);
  SpectralField out = field;
  out += (dt / 6.0) * k1;
  out += (dt / 3.0) * k2;
  out += (dt / 3.0) * k3;
  out += (dt / 6.0) * k4;
  return out;
}

double lifespan(const SpectralField& u0, const GevreyWeight& weight, double alpha, double c) {
  if (!(c > 0.0)) throw_invalid_input("lifespan constant must be positive");
  const double norm = gevrey_norm(u0, GevreyWeight{weight.sigma, 0.5 * alpha, SymbolKind::kCosh});
  if (!std::isfinite(norm)) throw_invalid_input("initial norm is not finite");
  if (norm == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (8.0 * c * norm);
}

std::pair<Trajectory, PicardDiagnostics> picard_solve(const SpectralField& u0, double delta,
                                                      double alpha, const GevreyWeight& weight,
                                                      const PicardOptions& options) {
  if (!(delta > 0.0)) throw_invalid_input("Picard window must be positive");
  if (options.quadrature_nodes < 2) throw_invalid_input("need at least two quadrature nodes");
  if (options.max_iter < 1) throw_invalid_input("max_iter must be positive");

  const auto nodes = static_cast<std::size_t>(options.quadrature_nodes);
  const double h = delta / static_cast<double>(nodes - 1);
  const GevreyWeight metric{weight.sigma, 0.5 * alpha, SymbolKind::kCosh};
  std::vector<double> tau(nodes);
  for (std::size_t l = 0; l < nodes; ++l) tau[l] = (l + 1 == nodes) ? delta : h * l;

  // Start from the linear flow.
  std::vector<SpectralField> u;
  u.reserve(nodes);
  for (double t : tau) u.push_back(semigroup(u0, t, alpha));

  PicardDiagnostics diag;
  const double floor = 1e-13 * std::max(1.0, gevrey_norm(u0, metric));
  std::vector<SpectralField> next(u);
  for (int iter = 1; iter <= options.max_iter; ++iter) {
    // Gamma u(t_i) = S(t_i) [u0 - 1/2 int_0^{t_i} S(-tau) phi(D) u(tau)^2 dtau]
    SpectralField integral(u0.grid());
    SpectralField prev_g(u0.grid());
    double dist = 0.0;
    for (std::size_t l = 0; l < nodes; ++l) {
      SpectralField g = semigroup(apply_phi(nonlinear_term(u[l]), alpha), -tau[l], alpha);
      if (l > 0) {
        const double step = tau[l] - tau[l - 1];
        integral += (0.5 * step) * prev_g;
        integral += (0.5 * step) * g;
      }
      prev_g = std::move(g);
      next[l] = semigroup(u0 - 0.5 * integral, tau[l], alpha);
      dist = std::max(dist, gevrey_norm(next[l] - u[l], metric));
    }
    u.swap(next);
    diag.iterate_distances.push_back(dist);
    diag.iterations = iter;
    if (dist < options.tol) {
      diag.converged = true;
      break;
    }
  }

  for (std::size_t k = 1; k < diag.iterate_distances.size(); ++k) {
    const double before = diag.iterate_distances[k - 1];
    if (before > floor) {
      diag.contraction_factor =
          std::max(diag.contraction_factor, diag.iterate_distances[k] / before);
    }
  }
  if (!diag.converged) throw NoConvergenceError(diag);

  Trajectory traj{{}, {}, {}, ModelParams(alpha, u0.grid(), h, delta)};
  traj.times = tau;
  for (const SpectralField& state : u) traj.reports.push_back(norm_report(state, weight, alpha));
  traj.states = std::move(u);
  return {std::move(traj), std::move(diag)};
}

Trajectory simulate(const SpectralField& u0, const ModelParams& params,
                    const GevreyWeight& weight, int sample_every, const StepObserver& observer) {
  params.validate();
  if (sample_every < 1) throw_invalid_input("sample_every must be >= 1");
  if (!(u0.grid() == params.grid)) throw_invalid_input("initial field grid differs from params");

  double max_phi = 0.0;
  for (int j = 0; j <= params.grid.max_mode(); ++j) {
    max_phi = std::max(max_phi, std::abs(phi_symbol(params.grid.wavenumber(j), params.alpha)));
  }
  if (params.dt * max_phi >= 1.0) {
    std::clog << "warning: dt * max|phi| = " << params.dt * max_phi << " >= 1\n";
  }

  Trajectory traj{{}, {}, {}, params};
  auto record = [&](double t, const SpectralField& state) {
    traj.times.push_back(t);
    traj.states.push_back(state);
    traj.reports.push_back(norm_report(state, weight, params.alpha));
  };

  SpectralField state = u0;
  check_blowup(state, 0.0);
  record(0.0, state);
  if (observer) observer(0.0, state);

  const auto n_steps =
      static_cast<long>(std::ceil(params.t_end / params.dt - 1e-9));
  double t = 0.0;
  for (long k = 1; k <= n_steps; ++k) {
    const double t_next = std::min(static_cast<double>(k) * params.dt, params.t_end);
    state = step_rk4(state, t_next - t, params.alpha, params.linear_only);
    t = t_next;
    check_blowup(state, t);
    if (observer) observer(t, state);
    if (k % sample_every == 0 || k == n_steps) record(t, state);
  }
  return traj;
}

}  // namespace gevrey_bbm
