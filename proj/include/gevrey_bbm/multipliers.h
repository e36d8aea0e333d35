#ifndef GEVREY_BBM_MULTIPLIERS_H_
#define GEVREY_BBM_MULTIPLIERS_H_

#include "gevrey_bbm/spectral_core.h"

namespace gevrey_bbm {

enum class SymbolKind {
  kCosh,  // m(xi) = cosh(sigma xi), the smooth I-operator symbol
  kExp,   // exp(sigma |xi|) (1 + |xi|)^s, the G^{sigma,s} weight
};

// Frequency weight defining the Gevrey norms and the I-operator.
struct GevreyWeight {
  double sigma = 0.0;
  double s = 0.0;
  SymbolKind kind = SymbolKind::kCosh;

  void validate() const;
};

// Parameterization of the (fractional) BBM equation
//   u_t + D^alpha u_t + u_x + u u_x = 0,
// alpha = 2 being the classical equation.
struct ModelParams {
  ModelParams(double alpha, const Grid& grid, double dt, double t_end);

  double alpha;
  Grid grid;
  double dt;
  double t_end;
  // Drop u^2 from the right-hand side (linear flow).
  bool linear_only = false;

  void validate() const;
};

// Linear-scale operator application refuses sigma * xi_max above this.
inline constexpr double kOverflowThreshold = 700.0;

// i xi / (1 + |xi|^alpha).
Complex phi_symbol(double xi, double alpha);

// log of the symbol applied by apply_I for this weight (cosh or exp part
// only; the Sobolev factor is handled by the norms).
double log_gevrey_symbol(double xi, double sigma, SymbolKind kind);

SpectralField apply_phi(const SpectralField& field, double alpha);

// exp(-t phi(D)): unimodular on every mode.
SpectralField semigroup(const SpectralField& field, double t, double alpha);

// CoshSymbol multiplies by cosh(sigma xi); ExpSymbol by
// exp(sigma |xi|) (1 + |xi|)^s. Throws OverflowRisk when
// sigma * xi_max > kOverflowThreshold.
SpectralField apply_I(const SpectralField& field, const GevreyWeight& weight);

// |xi|^beta, beta >= 0.
SpectralField apply_D_beta(const SpectralField& field, double beta);

SpectralField apply_exp_weight(const SpectralField& field, double sigma);

}  // namespace gevrey_bbm

#endif  // GEVREY_BBM_MULTIPLIERS_H_
