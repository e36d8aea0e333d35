#ifndef GEVREY_BBM_SPECTRAL_CORE_H_
#define GEVREY_BBM_SPECTRAL_CORE_H_

// Periodic spectral representation of real fields on [-L/2, L/2).
//
// Transform convention (used by every module, asserted by the Parseval test):
//
//   collocation points  x_m  = -L/2 + m L/n,          m = 0..n-1
//   wavenumbers         xi_j = 2 pi j / L,            j = -n/2+1 .. n/2
//   forward             c_j  = (L/n) sum_m u_m exp(-i xi_j x_m)
//   inverse             u_m  = (1/L) sum_j c_j exp(+i xi_j x_m)
//   Parseval            (L/n) sum_m |u_m|^2 = (1/L) sum_j |c_j|^2
//
// so c_0 = L * mean(u) and c_j approximates the continuum transform
// int u(x) exp(-i xi x) dx of a field supported inside the box. Norms in the
// norms module carry the same 1/L weight and therefore approximate their
// physical-space continuum counterparts.
//
// Coefficients are stored in FFT order: index i holds mode j = i for
// i <= n/2 and j = i - n otherwise. The Nyquist mode j = n/2 has no conjugate
// partner; nonlinear evaluations zero it.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace gevrey_bbm {

using Complex = std::complex<double>;

class Grid {
 public:
  // n_points must be even and >= 8; domain_length must be positive.
  Grid(int n_points, double domain_length);

  int n_points() const { return n_points_; }
  double domain_length() const { return domain_length_; }

  int min_mode() const { return -n_points_ / 2 + 1; }
  int max_mode() const { return n_points_ / 2; }
  int nyquist_mode() const { return n_points_ / 2; }
  // Largest |j| kept by the 2/3 rule.
  int dealias_cutoff() const { return n_points_ / 3; }

  int mode(std::size_t index) const;
  std::size_t index(int mode) const;
  bool contains_mode(int mode) const {
    return mode >= min_mode() && mode <= max_mode();
  }

  double wavenumber(int mode) const;
  double wavenumber_at(std::size_t index) const { return wavenumber(mode(index)); }
  double max_wavenumber() const { return wavenumber(max_mode()); }

  double x(std::size_t m) const;
  std::vector<double> collocation_points() const;

  bool operator==(const Grid&) const = default;

 private:
  int n_points_;
  double domain_length_;
};

class SpectralField {
 public:
  explicit SpectralField(const Grid& grid);
  SpectralField(const Grid& grid, std::vector<Complex> coeffs);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return coeffs_.size(); }

  Complex coeff(int mode) const { return coeffs_[grid_.index(mode)]; }
  Complex& coeff(int mode) { return coeffs_[grid_.index(mode)]; }

  // Raw access in FFT storage order.
  std::span<const Complex> coeffs() const { return coeffs_; }
  std::span<Complex> coeffs() { return coeffs_; }

  double max_abs() const;
  bool is_finite() const;
  bool is_hermitian(double rel_tol = 1e-12) const;
  void zero_nyquist();

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double factor);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double f, SpectralField a) { return a *= f; }
  friend SpectralField operator*(SpectralField a, double f) { return a *= f; }

 private:
  Grid grid_;
  std::vector<Complex> coeffs_;
};

// Hermitian-symmetry tolerance used by inverse_transform.
inline constexpr double kSymmetryTolerance = 1e-10;

SpectralField forward_transform(std::span<const double> samples, const Grid& grid);

// Throws SymmetryViolation when the field is not the transform of a real
// function (relative tolerance kSymmetryTolerance).
std::vector<double> inverse_transform(const SpectralField& field);

// Zeroes every coefficient with |j| > n/3.
SpectralField dealias(const SpectralField& field);

// Field whose coefficients are |c_j|.
SpectralField modulus_field(const SpectralField& field);

// Same field on a finer grid of the same length (zero padding); used where a
// product of fields must be evaluated without aliasing.
SpectralField zero_pad(const SpectralField& field, int n_points);

}  // namespace gevrey_bbm

#endif  // GEVREY_BBM_SPECTRAL_CORE_H_
