#ifndef GEVREY_BBM_INITIAL_DATA_H_
#define GEVREY_BBM_INITIAL_DATA_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "gevrey_bbm/spectral_core.h"

namespace gevrey_bbm {

enum class Profile {
  kGaussian,  // a exp(-x^2 / w^2)
  kCosine,    // a cos(2 pi k x / L)
  kSech2,     // a sech^2(x / w)
};

Profile parse_profile(std::string_view name);
std::string_view to_string(Profile profile);

struct InitialData {
  Profile profile = Profile::kGaussian;
  double amplitude = -1.0;
  double width = 2.0;
  int cosine_mode = 1;
};

// Sampled on the grid, transformed, 2/3-dealiased, Nyquist zeroed.
SpectralField make_initial_field(const InitialData& data, const Grid& grid);

// Random real field with modes 1..band drawn from a seeded generator; the
// draws do not depend on the grid size, so the same seed gives the same
// function on every grid that resolves the band.
SpectralField random_band_limited_field(const Grid& grid, int band, std::uint64_t seed);

}  // namespace gevrey_bbm

#endif  // GEVREY_BBM_INITIAL_DATA_H_
