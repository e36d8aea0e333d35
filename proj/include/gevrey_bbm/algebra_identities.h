#ifndef GEVREY_BBM_ALGEBRA_IDENTITIES_H_
#define GEVREY_BBM_ALGEBRA_IDENTITIES_H_

// Polynomial machinery behind the almost conservation law.
//
// On the hyperplane xi1 + xi2 + xi3 = 0 the odd power sums factor as
//
//   xi1^{2k+1} + xi2^{2k+1} + xi3^{2k+1}
//     = xi1 xi2 xi3 * sum_{i+j=2k-2} (xi1^i (-xi2)^j + xi1^i (-xi3)^j + xi2^i (-xi3)^j),
//
// which is verified here in exact arithmetic, both pointwise over integer
// triads and as an identity of bivariate polynomials after substituting
// xi3 = -xi1 - xi2.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gevrey_bbm/error.h"
#include "gevrey_bbm/rng.h"

namespace gevrey_bbm {

using Rational = mpq_class;
using BigInt = mpz_class;
using RealTriad = std::array<double, 3>;

class Triad {
 public:
  // Throws InvalidInput unless xi1 + xi2 + xi3 == 0 exactly.
  Triad(Rational xi1, Rational xi2, Rational xi3);
  static Triad from_pair(const Rational& xi1, const Rational& xi2);

  const Rational& xi1() const { return xi_[0]; }
  const Rational& xi2() const { return xi_[1]; }
  const Rational& xi3() const { return xi_[2]; }
  RealTriad to_real() const;
  std::string to_string() const;

 private:
  std::array<Rational, 3> xi_;
};

Rational power_sum(const Triad& t, int k);
Rational factored_form(const Triad& t, int k);

// Coefficients c_i of sum_i c_i a^i b^{d-i}, homogeneous of degree d.
struct HomogeneousPolynomial {
  int degree = 0;
  std::vector<BigInt> coeffs;

  bool operator==(const HomogeneousPolynomial&) const = default;
};

// Both sides of the factorization with xi1 = a, xi2 = b, xi3 = -a - b.
HomogeneousPolynomial expand_power_sum(int k);
HomogeneousPolynomial expand_factored_form(int k);

struct SpecialCase {
  int k = 0;
  std::string label;
  bool holds = false;
};

struct IdentityReport {
  int k_max = 0;
  int coordinate_range = 0;
  long triads_tested = 0;
  bool all_equal = false;
  Rational max_defect = 0;
  int symbolic_k_max = 0;
  bool symbolic_equal = false;
  std::vector<SpecialCase> special_cases;
};

class IdentityViolation : public Error {
 public:
  IdentityViolation(const Triad& counterexample, int k);
  const Triad& counterexample() const { return counterexample_; }
  int k() const { return k_; }

 private:
  Triad counterexample_;
  int k_;
};

// Exhaustive check over integer triads with |xi_i| <= coordinate_range for
// k = 1..k_max, symbolic coefficient comparison for k = 1..symbolic_k_max
// (defaults to k_max), and the k = 1, 2 closed forms. Throws
// IdentityViolation on any mismatch.
IdentityReport verify_factor_identity(int k_max, int coordinate_range, int symbolic_k_max = -1);

inline constexpr int kSeriesMaxTerms = 200;
inline constexpr double kSeriesRelTol = 1e-12;

struct SeriesValue {
  double value = 0.0;
  double tail_bound = 0.0;
  int terms = 0;
};

// sum_{k>=1} (2 sigma)^{2k} / (2k)! (xi1^{2k+1} + xi2^{2k+1} + xi3^{2k+1}).
// Terms are added from k_cut on until the tail bound (twice the first
// omitted term once consecutive terms shrink by at least half) falls below
// kSeriesRelTol times the partial sum. Throws SeriesDivergence if that does
// not happen within kSeriesMaxTerms terms.
SeriesValue series_symmetrized(const RealTriad& t, double sigma, int k_cut = 1);
SeriesValue series_symmetrized(const Triad& t, double sigma, int k_cut = 1);

// Psi(xi) = sum_{k>=0} 2^{2k} / (2k+1)! |xi1 xi2 xi3|^{1/6} (xi1^{2k} + xi2^{2k} + xi3^{2k}).
double psi(const RealTriad& t);
double psi(const Triad& t);

// Uniform xi1, xi2 on [-range, range], xi3 = -xi1 - xi2.
RealTriad sample_triad(SeededRng& rng, double range);

struct FabCalibration {
  double sigma = 0.0;
  int samples = 0;
  int skipped = 0;
  double range = 0.0;
  std::uint64_t seed = 0;
  // max |series| / (sigma^{3/2} |xi1 xi2 xi3|^{5/6} e^{sigma sum |xi_i|})
  double max_ratio = 0.0;
};

inline constexpr double kDefaultTriadRange = 20.0;

FabCalibration check_fab_bound(int samples, double sigma, double range = kDefaultTriadRange,
                               std::uint64_t seed = kDefaultSeed);

struct PsiCalibration {
  int samples = 0;
  double range = 0.0;
  std::uint64_t seed = 0;
  // max Psi(xi) / e^{|xi1| + |xi2| + |xi3|}
  double max_ratio = 0.0;
};

PsiCalibration calibrate_psi_constant(int samples, double range = kDefaultTriadRange,
                                      std::uint64_t seed = kDefaultSeed);

struct BoundExponents {
  double epsilon0 = 0.0;
  double beta = 0.0;
  double mu = 0.0;
};

// epsilon0 = min(alpha/2 - 1/6, 1); beta = 2 - 3(1 - epsilon0), i.e.
// 3(alpha-1)/2 below alpha = 7/3 and 2 above; mu = 1/beta.
BoundExponents fractional_bound_exponents(double alpha);

}  // namespace gevrey_bbm

#endif  // GEVREY_BBM_ALGEBRA_IDENTITIES_H_
