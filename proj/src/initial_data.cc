#include "gevrey_bbm/initial_data.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "gevrey_bbm/error.h"
#include "gevrey_bbm/rng.h"

namespace gevrey_bbm {

Profile parse_profile(std::string_view name) {
  if (name == "gaussian") return Profile::kGaussian;
  if (name == "cosine") return Profile::kCosine;
  if (name == "sech2") return Profile::kSech2;
  throw_invalid_input("unknown profile '" + std::string(name) +
                      "' (expected gaussian, cosine or sech2)");
}

std::string_view to_string(Profile profile) {
  switch (profile) {
    case Profile::kGaussian:
      return "gaussian";
    case Profile::kCosine:
      return "cosine";
    case Profile::kSech2:
      return "sech2";
  }
  return "unknown";
}

SpectralField make_initial_field(const InitialData& data, const Grid& grid) {
  if (data.profile != Profile::kCosine && !(data.width > 0.0)) {
    throw_invalid_input("profile width must be positive");
  }
  std::vector<double> u(static_cast<std::size_t>(grid.n_points()));
  for (std::size_t m = 0; m < u.size(); ++m) {
    const double x = grid.x(m);
    switch (data.profile) {
      case Profile::kGaussian:
        u[m] = data.amplitude * std::exp(-(x * x) / (data.width * data.width));
        break;
      case Profile::kCosine:
        u[m] = data.amplitude *
               std::cos(2.0 * std::numbers::pi * data.cosine_mode * x / grid.domain_length());
        break;
      case Profile::kSech2: {
        const double sech = 1.0 / std::cosh(x / data.width);
        u[m] = data.amplitude * sech * sech;
        break;
      }
    }
  }
  SpectralField field = dealias(forward_transform(u, grid));
  field.zero_nyquist();
  return field;
}

SpectralField random_band_limited_field(const Grid& grid, int band, std::uint64_t seed) {
  if (band < 1 || band > grid.dealias_cutoff()) {
    throw_invalid_input("random field band must lie in [1, n/3]");
  }
  SeededRng rng(seed);
  SpectralField field(grid);
  const double l = grid.domain_length();
  field.coeff(0) = l * rng.normal();
  for (int j = 1; j <= band; ++j) {
    const Complex c(rng.normal(), rng.normal());
    field.coeff(j) = l * c / static_cast<double>(j);
    field.coeff(-j) = std::conj(field.coeff(j));
  }
  return field;
}

}  // namespace gevrey_bbm
