#ifndef GEVREY_BBM_RNG_H_
#define GEVREY_BBM_RNG_H_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace gevrey_bbm {

// Seeded generator with distributions computed by hand from the raw 64-bit
// stream, so sampled values are identical across standard libraries.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller.
  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

inline constexpr std::uint64_t kDefaultSeed = 20240617;

}  // namespace gevrey_bbm

#endif  // GEVREY_BBM_RNG_H_
