#include "gevrey_bbm/algebra_identities.h"

#include <algorithm>
#include <cmath>
#include <utility>

namespace gevrey_bbm {
namespace {

// Once every component ratio of consecutive terms is at most this, the
// remaining tail is bounded by a geometric series: tail <= 2 * next term.
constexpr double kGeometricRatio = 0.5;
constexpr int kPsiMaxTerms = 5000;

std::vector<Rational> powers(const Rational& x, int n) {
  std::vector<Rational> p(static_cast<std::size_t>(n) + 1);
  p[0] = 1;
  for (int i = 1; i <= n; ++i) p[i] = p[i - 1] * x;
  return p;
}

HomogeneousPolynomial constant(const BigInt& c) { return {0, {c}}; }

HomogeneousPolynomial linear(long ca, long cb) {
  // coeffs[i] multiplies a^i b^{d-i}
  return {1, {BigInt(cb), BigInt(ca)}};
}

HomogeneousPolynomial multiply(const HomogeneousPolynomial& p, const HomogeneousPolynomial& q) {
  HomogeneousPolynomial r{p.degree + q.degree,
                          std::vector<BigInt>(static_cast<std::size_t>(p.degree + q.degree) + 1)};
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    for (std::size_t j = 0; j < q.coeffs.size(); ++j) r.coeffs[i + j] += p.coeffs[i] * q.coeffs[j];
  }
  return r;
}

HomogeneousPolynomial add(const HomogeneousPolynomial& p, const HomogeneousPolynomial& q) {
  if (p.degree != q.degree) throw_invalid_input("adding polynomials of different degree");
  HomogeneousPolynomial r = p;
  for (std::size_t i = 0; i < q.coeffs.size(); ++i) r.coeffs[i] += q.coeffs[i];
  return r;
}

HomogeneousPolynomial scale(HomogeneousPolynomial p, long c) {
  for (BigInt& v : p.coeffs) v *= c;
  return p;
}

HomogeneousPolynomial power(const HomogeneousPolynomial& p, int n) {
  HomogeneousPolynomial r = constant(1);
  for (int i = 0; i < n; ++i) r = multiply(r, p);
  return r;
}

// xi1 = a, xi2 = b, xi3 = -a - b
HomogeneousPolynomial xi(int which) {
  switch (which) {
    case 1:
      return linear(1, 0);
    case 2:
      return linear(0, 1);
    default:
      return linear(-1, -1);
  }
}

HomogeneousPolynomial triple_product() { return multiply(multiply(xi(1), xi(2)), xi(3)); }

void check_k(int k) {
  if (k < 1) throw_invalid_input("power index k must be >= 1");
}

bool on_degenerate_line(const RealTriad& t) { return t[0] == 0.0 || t[1] == 0.0 || t[2] == 0.0; }

void check_hyperplane(const RealTriad& t) {
  for (double v : t) {
    if (!std::isfinite(v)) throw_invalid_input("triad coordinates must be finite");
  }
  const double scale = std::max({std::abs(t[0]), std::abs(t[1]), std::abs(t[2]), 1.0});
  if (std::abs(t[0] + t[1] + t[2]) > 1e-12 * scale) {
    throw_invalid_input("triad is not on the hyperplane xi1 + xi2 + xi3 = 0");
  }
}

}  // namespace

Triad::Triad(Rational xi1, Rational xi2, Rational xi3)
    : xi_{std::move(xi1), std::move(xi2), std::move(xi3)} {
  for (Rational& v : xi_) v.canonicalize();
  if (xi_[0] + xi_[1] + xi_[2] != 0) {
    throw_invalid_input("triad " + to_string() + " is not on the hyperplane xi1 + xi2 + xi3 = 0");
  }
}

Triad Triad::from_pair(const Rational& xi1, const Rational& xi2) {
  return Triad(xi1, xi2, -(xi1 + xi2));
}

RealTriad Triad::to_real() const { return {xi_[0].get_d(), xi_[1].get_d(), xi_[2].get_d()}; }

std::string Triad::to_string() const {
  return "(" + xi_[0].get_str() + ", " + xi_[1].get_str() + ", " + xi_[2].get_str() + ")";
}

Rational power_sum(const Triad& t, int k) {
  check_k(k);
  const auto n = static_cast<unsigned long>(2 * k + 1);
  Rational sum = 0;
  for (const Rational* x : {&t.xi1(), &t.xi2(), &t.xi3()}) {
    BigInt num;
    BigInt den;
    mpz_pow_ui(num.get_mpz_t(), x->get_num_mpz_t(), n);
    mpz_pow_ui(den.get_mpz_t(), x->get_den_mpz_t(), n);
    sum += Rational(num, den);
  }
  sum.canonicalize();
  return sum;
}

Rational factored_form(const Triad& t, int k) {
  check_k(k);
  const int top = 2 * k - 2;
  const auto p1 = powers(t.xi1(), top);
  const auto p2 = powers(t.xi2(), top);
  const auto m2 = powers(-t.xi2(), top);
  const auto m3 = powers(-t.xi3(), top);
  Rational inner = 0;
  for (int i = 0; i <= top; ++i) {
    const int j = top - i;
    inner += p1[i] * m2[j] + p1[i] * m3[j] + p2[i] * m3[j];
  }
  Rational out = t.xi1() * t.xi2() * t.xi3() * inner;
  out.canonicalize();
  return out;
}

HomogeneousPolynomial expand_power_sum(int k) {
  check_k(k);
  const int n = 2 * k + 1;
  return add(add(power(xi(1), n), power(xi(2), n)), power(xi(3), n));
}

HomogeneousPolynomial expand_factored_form(int k) {
  check_k(k);
  const int top = 2 * k - 2;
  const HomogeneousPolynomial neg2 = scale(xi(2), -1);
  const HomogeneousPolynomial neg3 = scale(xi(3), -1);
  HomogeneousPolynomial inner{top, std::vector<BigInt>(static_cast<std::size_t>(top) + 1)};
  for (int i = 0; i <= top; ++i) {
    const int j = top - i;
    const HomogeneousPolynomial a_i = power(xi(1), i);
    inner = add(inner, multiply(a_i, power(neg2, j)));
    inner = add(inner, multiply(a_i, power(neg3, j)));
    inner = add(inner, multiply(power(xi(2), i), power(neg3, j)));
  }
  return multiply(triple_product(), inner);
}

IdentityViolation::IdentityViolation(const Triad& counterexample, int k)
    : Error(ErrorKind::kIdentityViolation,
            "power sum and factored form differ at k = " + std::to_string(k) + ", triad " +
                counterexample.to_string()),
      counterexample_(counterexample),
      k_(k) {}

IdentityReport verify_factor_identity(int k_max, int coordinate_range, int symbolic_k_max) {
  if (k_max < 1) throw_invalid_input("k_max must be >= 1");
  if (coordinate_range < 0) throw_invalid_input("coordinate_range must be >= 0");
  if (symbolic_k_max < 0) symbolic_k_max = k_max;

  IdentityReport report;
  report.k_max = k_max;
  report.coordinate_range = coordinate_range;
  report.symbolic_k_max = symbolic_k_max;

  const int r = coordinate_range;
  for (int a = -r; a <= r; ++a) {
    for (int b = -r; b <= r; ++b) {
      if (std::abs(a + b) > r) continue;
      const Triad t = Triad::from_pair(a, b);
      ++report.triads_tested;
      for (int k = 1; k <= k_max; ++k) {
        Rational defect = power_sum(t, k) - factored_form(t, k);
        defect = abs(defect);
        if (defect != 0) throw IdentityViolation(t, k);
        report.max_defect = std::max(report.max_defect, defect);
      }
    }
  }

  report.symbolic_equal = true;
  for (int k = 1; k <= symbolic_k_max; ++k) {
    if (!(expand_power_sum(k) == expand_factored_form(k))) {
      throw Error(ErrorKind::kIdentityViolation,
                  "coefficient lists differ at k = " + std::to_string(k));
    }
  }

  const HomogeneousPolynomial e3 = triple_product();
  const HomogeneousPolynomial e2 =
      add(add(multiply(xi(1), xi(2)), multiply(xi(1), xi(3))), multiply(xi(2), xi(3)));
  report.special_cases.push_back(
      {1, "3·ξ₁ξ₂ξ₃",
       expand_power_sum(1) == scale(e3, 3) && expand_factored_form(1) == scale(e3, 3)});
  const HomogeneousPolynomial k2 = scale(multiply(e3, e2), -5);
  report.special_cases.push_back(
      {2, "−5·ξ₁ξ₂ξ₃·e₂", expand_power_sum(2) == k2 && expand_factored_form(2) == k2});
  for (const SpecialCase& c : report.special_cases) {
    if (!c.holds) {
      throw Error(ErrorKind::kIdentityViolation, "closed form " + c.label + " does not hold");
    }
  }

  report.all_equal = report.max_defect == 0;
  return report;
}

SeriesValue series_symmetrized(const RealTriad& t, double sigma, int k_cut) {
  check_hyperplane(t);
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw_invalid_input("sigma must be >= 0");
  if (k_cut < 1) throw_invalid_input("k_cut must be >= 1");

  SeriesValue out;
  if (sigma == 0.0 || on_degenerate_line(t)) return out;

  // Component i of term k is xi_i (2 sigma xi_i)^{2k} / (2k)!, updated by
  // the factor y_i^2 / ((2k)(2k-1)) with y_i = 2 sigma xi_i.
  std::array<double, 3> comp{};
  std::array<double, 3> y2{};
  double y2_max = 0.0;
  for (int i = 0; i < 3; ++i) {
    comp[i] = t[i];
    const double y = 2.0 * sigma * t[i];
    y2[i] = y * y;
    y2_max = std::max(y2_max, y2[i]);
  }

  double sum = 0.0;
  for (int k = 1; k <= kSeriesMaxTerms; ++k) {
    const double denom = (2.0 * k) * (2.0 * k - 1.0);
    double term = 0.0;
    for (int i = 0; i < 3; ++i) {
      comp[i] *= y2[i] / denom;
      term += comp[i];
    }
    if (!std::isfinite(term)) break;
    sum += term;
    out.terms = k;
    if (k < k_cut) continue;

    const double next_ratio = y2_max / ((2.0 * k + 2.0) * (2.0 * k + 1.0));
    if (next_ratio <= kGeometricRatio) {
      double next = 0.0;
      for (int i = 0; i < 3; ++i) next += std::abs(comp[i]) * y2[i] / ((2.0 * k + 2.0) * (2.0 * k + 1.0));
      const double tail = 2.0 * next;
      if (tail < kSeriesRelTol * std::abs(sum) || tail == 0.0) {
        out.value = sum;
        out.tail_bound = tail;
        return out;
      }
    }
  }
  throw Error(ErrorKind::kSeriesDivergence,
              "symmetrized series did not settle within " + std::to_string(kSeriesMaxTerms) +
                  " terms (sigma |xi| too large for direct summation)");
}

SeriesValue series_symmetrized(const Triad& t, double sigma, int k_cut) {
  return series_symmetrized(t.to_real(), sigma, k_cut);
}

double psi(const RealTriad& t) {
  check_hyperplane(t);
  const double prod = std::abs(t[0] * t[1] * t[2]);
  if (prod == 0.0) return 0.0;

  // sum_k (2 xi)^{2k} / (2k+1)! per coordinate; all terms are positive.
  std::array<double, 3> comp{1.0, 1.0, 1.0};
  std::array<double, 3> y2{};
  double y2_max = 0.0;
  for (int i = 0; i < 3; ++i) {
    y2[i] = 4.0 * t[i] * t[i];
    y2_max = std::max(y2_max, y2[i]);
  }
  double sum = 3.0;
  for (int k = 1; k <= kPsiMaxTerms; ++k) {
    const double denom = (2.0 * k) * (2.0 * k + 1.0);
    double term = 0.0;
    for (int i = 0; i < 3; ++i) {
      comp[i] *= y2[i] / denom;
      term += comp[i];
    }
    sum += term;
    if (!std::isfinite(sum)) break;
    const double step = (2.0 * k + 2.0) * (2.0 * k + 3.0);
    if (y2_max / step <= kGeometricRatio) {
      const double tail = 2.0 * term * (y2_max / step);
      if (tail < kSeriesRelTol * sum) return std::cbrt(std::sqrt(prod)) * sum;
    }
  }
  throw Error(ErrorKind::kSeriesDivergence, "Psi series overflowed");
}

double psi(const Triad& t) { return psi(t.to_real()); }

RealTriad sample_triad(SeededRng& rng, double range) {
  const double a = rng.uniform(-range, range);
  const double b = rng.uniform(-range, range);
  return {a, b, -(a + b)};
}

FabCalibration check_fab_bound(int samples, double sigma, double range, std::uint64_t seed) {
  if (samples < 1) throw_invalid_input("samples must be >= 1");
  if (!(sigma > 0.0)) throw_invalid_input("sigma must be > 0");
  if (!(range > 0.0)) throw_invalid_input("range must be > 0");

  FabCalibration cal;
  cal.sigma = sigma;
  cal.samples = samples;
  cal.range = range;
  cal.seed = seed;
  SeededRng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const RealTriad t = sample_triad(rng, range);
    const double prod = std::abs(t[0] * t[1] * t[2]);
    if (prod == 0.0) {
      ++cal.skipped;
      continue;
    }
    const double value = std::abs(series_symmetrized(t, sigma).value);
    const double abs_sum = std::abs(t[0]) + std::abs(t[1]) + std::abs(t[2]);
    const double log_bound = 1.5 * std::log(sigma) + (5.0 / 6.0) * std::log(prod) + sigma * abs_sum;
    if (value == 0.0) continue;
    cal.max_ratio = std::max(cal.max_ratio, std::exp(std::log(value) - log_bound));
  }
  return cal;
}

PsiCalibration calibrate_psi_constant(int samples, double range, std::uint64_t seed) {
  if (samples < 1) throw_invalid_input("samples must be >= 1");
  if (!(range > 0.0)) throw_invalid_input("range must be > 0");
  PsiCalibration cal;
  cal.samples = samples;
  cal.range = range;
  cal.seed = seed;
  SeededRng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const RealTriad t = sample_triad(rng, range);
    const double value = psi(t);
    if (value == 0.0) continue;
    const double abs_sum = std::abs(t[0]) + std::abs(t[1]) + std::abs(t[2]);
    cal.max_ratio = std::max(cal.max_ratio, std::exp(std::log(value) - abs_sum));
  }
  return cal;
}

BoundExponents fractional_bound_exponents(double alpha) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) throw_invalid_input("alpha must be > 1");
  BoundExponents e;
  e.epsilon0 = std::min(0.5 * alpha - 1.0 / 6.0, 1.0);
  e.beta = alpha < 7.0 / 3.0 ? 1.5 * (alpha - 1.0) : 2.0;
  e.mu = 1.0 / e.beta;
  return e;
}

}  // namespace gevrey_bbm
