#include "gevrey_bbm/norms.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace gevrey_bbm {
namespace {

// log of the squared per-mode weight, excluding |c|^2.
template <typename LogWeight2>
double log_weighted_sum(const SpectralField& field, LogWeight2&& log_w2) {
  const Grid& grid = field.grid();
  std::vector<double> terms;
  terms.reserve(field.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double a = std::abs(field.coeffs()[i]);
    if (a == 0.0) continue;
    const double t = log_w2(grid.wavenumber_at(i)) + 2.0 * std::log(a);
    terms.push_back(t);
    top = std::max(top, t);
  }
  if (terms.empty()) return -std::numeric_limits<double>::infinity();
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - top);
  return top + std::log(acc) - std::log(grid.domain_length());
}

template <typename Weight2>
double linear_weighted_sum(const SpectralField& field, Weight2&& w2) {
  const Grid& grid = field.grid();
  double acc = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    acc += w2(grid.wavenumber_at(i)) * std::norm(field.coeffs()[i]);
  }
  return acc / grid.domain_length();
}

bool use_log(const SpectralField& field, double sigma, Accumulation mode) {
  if (mode == Accumulation::kAuto) {
    return sigma * field.grid().max_wavenumber() > kLogDomainCrossover;
  }
  return mode == Accumulation::kLog;
}

}  // namespace

double l2_norm(const SpectralField& field) {
  return std::sqrt(linear_weighted_sum(field, [](double) { return 1.0; }));
}

double hs_norm(const SpectralField& field, double s) {
  return std::sqrt(linear_weighted_sum(
      field, [s](double xi) { return std::pow(1.0 + std::abs(xi), 2.0 * s); }));
}

double log_gevrey_norm(const SpectralField& field, const GevreyWeight& weight) {
  weight.validate();
  return 0.5 * log_weighted_sum(field, [&](double xi) {
           return 2.0 * weight.s * std::log1p(std::abs(xi)) +
                  2.0 * log_gevrey_symbol(xi, weight.sigma, weight.kind);
         });
}

double gevrey_norm(const SpectralField& field, const GevreyWeight& weight, Accumulation mode) {
  weight.validate();
  if (use_log(field, weight.sigma, mode)) return std::exp(log_gevrey_norm(field, weight));
  return std::sqrt(linear_weighted_sum(field, [&](double xi) {
    const double sob = std::pow(1.0 + std::abs(xi), 2.0 * weight.s);
    const double w = weight.kind == SymbolKind::kCosh ? std::cosh(weight.sigma * xi)
                                                      : std::exp(weight.sigma * std::abs(xi));
    return sob * w * w;
  }));
}

double energy(const SpectralField& field, double sigma, double alpha, Accumulation mode) {
  if (use_log(field, sigma, mode)) {
    return std::exp(log_weighted_sum(field, [&](double xi) {
      return std::log1p(std::pow(std::abs(xi), alpha)) +
             2.0 * log_gevrey_symbol(xi, sigma, SymbolKind::kCosh);
    }));
  }
  return linear_weighted_sum(field, [&](double xi) {
    const double m = std::cosh(sigma * xi);
    return (1.0 + std::pow(std::abs(xi), alpha)) * m * m;
  });
}

double h1_invariant(const SpectralField& field) {
  return linear_weighted_sum(field, [](double xi) { return 1.0 + xi * xi; });
}

NormReport norm_report(const SpectralField& field, const GevreyWeight& weight, double alpha) {
  NormReport r;
  r.l2 = l2_norm(field);
  r.h1 = hs_norm(field, 1.0);
  r.h_alpha_half = hs_norm(field, 0.5 * alpha);
  r.gevrey = gevrey_norm(field, weight);
  r.energy = energy(field, weight.sigma, alpha);
  r.h1_invariant = h1_invariant(field);
  return r;
}

}  // namespace gevrey_bbm
