#ifndef GEVREY_BBM_NORMS_H_
#define GEVREY_BBM_NORMS_H_

#include "gevrey_bbm/multipliers.h"
#include "gevrey_bbm/spectral_core.h"

namespace gevrey_bbm {

// All norms use the coefficient-space weight 1/L from spectral_core.h, e.g.
//   ||u||_{H^s}^2 = (1/L) sum_j (1 + |xi_j|)^{2s} |c_j|^2.

// Gevrey-weighted sums switch to log-magnitude accumulation above this value
// of sigma * xi_max.
inline constexpr double kLogDomainCrossover = 300.0;

enum class Accumulation { kAuto, kLinear, kLog };

double l2_norm(const SpectralField& field);
double hs_norm(const SpectralField& field, double s);

// sqrt((1/L) sum (1 + |xi|)^{2s} w(xi)^2 |c|^2) with w = cosh(sigma xi) for
// CoshSymbol and exp(sigma |xi|) for ExpSymbol. With CoshSymbol this is also
// ||I u||_{H^s}.
double gevrey_norm(const SpectralField& field, const GevreyWeight& weight,
                   Accumulation mode = Accumulation::kAuto);

// Natural log of gevrey_norm; finite even where the norm itself overflows.
double log_gevrey_norm(const SpectralField& field, const GevreyWeight& weight);

// E = int |I u|^2 + |D^{alpha/2} I u|^2 dx.
double energy(const SpectralField& field, double sigma, double alpha,
              Accumulation mode = Accumulation::kAuto);

// int u^2 + u_x^2 dx, conserved by classical BBM.
double h1_invariant(const SpectralField& field);

struct NormReport {
  double l2 = 0.0;
  double h1 = 0.0;
  double h_alpha_half = 0.0;
  double gevrey = 0.0;
  double energy = 0.0;
  double h1_invariant = 0.0;
};

NormReport norm_report(const SpectralField& field, const GevreyWeight& weight, double alpha);

}  // namespace gevrey_bbm

#endif  // GEVREY_BBM_NORMS_H_
