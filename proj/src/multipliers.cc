#include "gevrey_bbm/multipliers.h"

#include <cmath>
#include <numbers>
#include <string>

#include "gevrey_bbm/error.h"

namespace gevrey_bbm {
namespace {

template <typename Symbol>
SpectralField apply_symbol(const SpectralField& field, Symbol&& symbol) {
  SpectralField out = field;
  const Grid& grid = field.grid();
  auto coeffs = out.coeffs();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    coeffs[i] *= symbol(grid.wavenumber_at(i));
  }
  return out;
}

void check_overflow(const Grid& grid, double sigma) {
  if (sigma * grid.max_wavenumber() > kOverflowThreshold) {
    throw Error(ErrorKind::kOverflowRisk,
                "sigma * xi_max = " + std::to_string(sigma * grid.max_wavenumber()) +
                    " exceeds the linear-scale limit; use the log-domain norms");
  }
}

}  // namespace

void GevreyWeight::validate() const {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw_invalid_input("sigma must be finite and nonnegative");
  }
  if (!std::isfinite(s)) throw_invalid_input("Sobolev index must be finite");
}

ModelParams::ModelParams(double alpha, const Grid& grid, double dt, double t_end)
    : alpha(alpha), grid(grid), dt(dt), t_end(t_end) {}

void ModelParams::validate() const {
  if (!(alpha > 1.0)) throw_invalid_input("alpha must exceed 1");
  if (!(dt > 0.0)) throw_invalid_input("time step must be positive");
  if (!(t_end >= 0.0)) throw_invalid_input("t_end must be nonnegative");
}

Complex phi_symbol(double xi, double alpha) {
  return {0.0, xi / (1.0 + std::pow(std::abs(xi), alpha))};
}

double log_gevrey_symbol(double xi, double sigma, SymbolKind kind) {
  const double y = sigma * std::abs(xi);
  if (kind == SymbolKind::kExp) return y;
  // log cosh y = y + log(1 + e^{-2y}) - log 2
  return y + std::log1p(std::exp(-2.0 * y)) - std::numbers::ln2;
}

SpectralField apply_phi(const SpectralField& field, double alpha) {
  return apply_symbol(field, [alpha](double xi) { return phi_symbol(xi, alpha); });
}

SpectralField semigroup(const SpectralField& field, double t, double alpha) {
  return apply_symbol(field, [t, alpha](double xi) {
    // exp(-t * i * p) with p = phi/i real
    const double p = phi_symbol(xi, alpha).imag();
    return Complex(std::cos(t * p), -std::sin(t * p));
  });
}

SpectralField apply_I(const SpectralField& field, const GevreyWeight& weight) {
  weight.validate();
  check_overflow(field.grid(), weight.sigma);
  if (weight.kind == SymbolKind::kCosh) {
    return apply_symbol(field, [&](double xi) { return std::cosh(weight.sigma * xi); });
  }
  return apply_symbol(field, [&](double xi) {
    return std::exp(weight.sigma * std::abs(xi)) * std::pow(1.0 + std::abs(xi), weight.s);
  });
}

SpectralField apply_D_beta(const SpectralField& field, double beta) {
  if (!(beta >= 0.0)) throw_invalid_input("D^beta needs beta >= 0");
  if (beta == 0.0) return field;
  return apply_symbol(field, [beta](double xi) { return std::pow(std::abs(xi), beta); });
}

SpectralField apply_exp_weight(const SpectralField& field, double sigma) {
  return apply_I(field, GevreyWeight{sigma, 0.0, SymbolKind::kExp});
}

}  // namespace gevrey_bbm
