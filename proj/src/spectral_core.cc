#include "gevrey_bbm/spectral_core.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "gevrey_bbm/error.h"

namespace gevrey_bbm {
namespace {

// FFTW planning is not thread-safe; execution on new arrays is. Plans are
// created once per size under a lock and then shared.
class FftPlanCache {
 public:
  struct Plans {
    fftw_plan forward;
    fftw_plan backward;
  };

  static FftPlanCache& instance() {
    static FftPlanCache cache;
    return cache;
  }

  const Plans& get(int n) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    fftw_complex* in = fftw_alloc_complex(static_cast<std::size_t>(n));
    fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(n));
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    Plans plans{fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, flags),
                fftw_plan_dft_1d(n, in, out, FFTW_BACKWARD, flags)};
    fftw_free(in);
    fftw_free(out);
    return plans_.emplace(n, plans).first->second;
  }

  FftPlanCache(const FftPlanCache&) = delete;
  FftPlanCache& operator=(const FftPlanCache&) = delete;

 private:
  FftPlanCache() = default;
  ~FftPlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }

  std::mutex mutex_;
  std::map<int, Plans> plans_;
};

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

// exp(i xi_j L/2) = (-1)^j; for even n this equals (-1)^index.
double half_shift_sign(std::size_t index) { return (index % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

Grid::Grid(int n_points, double domain_length)
    : n_points_(n_points), domain_length_(domain_length) {
  if (n_points < 8 || n_points % 2 != 0) {
    throw_invalid_input("grid needs an even number of points >= 8, got " +
                        std::to_string(n_points));
  }
  if (!(domain_length > 0.0) || !std::isfinite(domain_length)) {
    throw_invalid_input("domain length must be positive and finite");
  }
}

int Grid::mode(std::size_t index) const {
  const int i = static_cast<int>(index);
  return i <= n_points_ / 2 ? i : i - n_points_;
}

std::size_t Grid::index(int mode) const {
  return static_cast<std::size_t>(mode >= 0 ? mode : mode + n_points_);
}

double Grid::wavenumber(int mode) const {
  return 2.0 * std::numbers::pi * mode / domain_length_;
}

double Grid::x(std::size_t m) const {
  return -0.5 * domain_length_ + static_cast<double>(m) * domain_length_ / n_points_;
}

std::vector<double> Grid::collocation_points() const {
  std::vector<double> xs(static_cast<std::size_t>(n_points_));
  for (std::size_t m = 0; m < xs.size(); ++m) xs[m] = x(m);
  return xs;
}

SpectralField::SpectralField(const Grid& grid)
    : grid_(grid), coeffs_(static_cast<std::size_t>(grid.n_points())) {}

SpectralField::SpectralField(const Grid& grid, std::vector<Complex> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != static_cast<std::size_t>(grid.n_points())) {
    throw_invalid_input("coefficient count does not match grid");
  }
}

double SpectralField::max_abs() const {
  double m = 0.0;
  for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

bool SpectralField::is_finite() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Complex& c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

bool SpectralField::is_hermitian(double rel_tol) const {
  const double scale = max_abs();
  if (scale == 0.0) return true;
  const double tol = rel_tol * scale;
  if (std::abs(coeff(0).imag()) > tol) return false;
  if (std::abs(coeff(grid_.nyquist_mode()).imag()) > tol) return false;
  for (int j = 1; j < grid_.nyquist_mode(); ++j) {
    if (std::abs(coeff(j) - std::conj(coeff(-j))) > tol) return false;
  }
  return true;
}

void SpectralField::zero_nyquist() { coeff(grid_.nyquist_mode()) = 0.0; }

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (!(grid_ == other.grid_)) throw_invalid_input("adding fields on different grids");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  if (!(grid_ == other.grid_)) throw_invalid_input("subtracting fields on different grids");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double factor) {
  for (Complex& c : coeffs_) c *= factor;
  return *this;
}

SpectralField forward_transform(std::span<const double> samples, const Grid& grid) {
  const auto n = static_cast<std::size_t>(grid.n_points());
  if (samples.size() != n) {
    throw_invalid_input("expected " + std::to_string(n) + " samples, got " +
                        std::to_string(samples.size()));
  }
  std::vector<Complex> in(samples.begin(), samples.end());
  std::vector<Complex> out(n);
  fftw_execute_dft(FftPlanCache::instance().get(grid.n_points()).forward,
                   as_fftw(in.data()), as_fftw(out.data()));
  const double w = grid.domain_length() / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) out[i] *= w * half_shift_sign(i);
  return SpectralField(grid, std::move(out));
}

std::vector<double> inverse_transform(const SpectralField& field) {
  if (!field.is_hermitian(kSymmetryTolerance)) {
    throw Error(ErrorKind::kSymmetryViolation,
                "coefficients are not Hermitian-symmetric; field is not real");
  }
  const Grid& grid = field.grid();
  const auto n = static_cast<std::size_t>(grid.n_points());
  std::vector<Complex> in(field.coeffs().begin(), field.coeffs().end());
  for (std::size_t i = 0; i < n; ++i) in[i] *= half_shift_sign(i);
  std::vector<Complex> out(n);
  fftw_execute_dft(FftPlanCache::instance().get(grid.n_points()).backward,
                   as_fftw(in.data()), as_fftw(out.data()));

  const double inv_l = 1.0 / grid.domain_length();
  std::vector<double> samples(n);
  double max_re = 0.0;
  double max_im = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    samples[m] = out[m].real() * inv_l;
    max_re = std::max(max_re, std::abs(samples[m]));
    max_im = std::max(max_im, std::abs(out[m].imag() * inv_l));
  }
  if (max_im > kSymmetryTolerance * std::max(max_re, field.max_abs() * inv_l)) {
    throw Error(ErrorKind::kSymmetryViolation,
                "imaginary residue of reconstruction exceeds tolerance");
  }
  return samples;
}

SpectralField dealias(const SpectralField& field) {
  SpectralField out = field;
  const int cutoff = field.grid().dealias_cutoff();
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (std::abs(field.grid().mode(i)) > cutoff) out.coeffs()[i] = 0.0;
  }
  return out;
}

SpectralField modulus_field(const SpectralField& field) {
  SpectralField out = field;
  for (Complex& c : out.coeffs()) c = std::abs(c);
  return out;
}

SpectralField zero_pad(const SpectralField& field, int n_points) {
  const Grid& src = field.grid();
  if (n_points < src.n_points()) throw_invalid_input("zero_pad cannot shrink a grid");
  Grid dst(n_points, src.domain_length());
  SpectralField out(dst);
  for (int j = src.min_mode(); j < src.nyquist_mode(); ++j) out.coeff(j) = field.coeff(j);
  const Complex nyq = field.coeff(src.nyquist_mode());
  if (n_points == src.n_points()) {
    out.coeff(src.nyquist_mode()) = nyq;
  } else {
    // Split the unpaired mode across +/- n/2 so the padded field stays real.
    out.coeff(src.nyquist_mode()) = 0.5 * nyq;
    out.coeff(-src.nyquist_mode()) = 0.5 * nyq;
  }
  return out;
}

}  // namespace gevrey_bbm
