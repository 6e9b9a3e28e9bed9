#include "blockrad/specfun.hpp"

#include <cmath>
#include <numbers>

#include "blockrad/dyadic.hpp"
#include "blockrad/errors.hpp"
#include "blockrad/quadrature.hpp"

namespace blockrad {
namespace {

constexpr double kPi = std::numbers::pi;
// Below this argument the power series is used; above it the Hankel expansion.
// At 17 the optimally truncated expansion is accurate to about e^{-34}.
constexpr double kSwitch = 17.0;

// x^{-nu} J_nu(x) from the power series, nu > -1.
double scaled_series(double nu, double x) {
  long double q = -0.25L * (long double)x * (long double)x;
  long double term = 1.0L / (std::pow(2.0L, (long double)nu) * std::tgamma((long double)nu + 1.0L));
  long double sum = term;
  for (int k = 0; k < 200; ++k) {
    term *= q / ((k + 1.0L) * (k + 1.0L + (long double)nu));
    sum += term;
    if (k > x && std::fabs(term) < 1e-21L * std::fabs(sum)) break;
  }
  return (double)sum;
}

// sqrt(pi x / 2) J_nu(x) = P cos(w) - Q sin(w), w = x - nu pi/2 - pi/4.
double hankel_core(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double P = 0.0, Q = 0.0;
  double t = 1.0;  // a_k / x^k
  double prev = INFINITY;
  for (int k = 0; k < 120; ++k) {
    double at = std::abs(t);
    if (at > prev) break;
    switch (k % 4) {
      case 0: P += t; break;
      case 1: Q += t; break;
      case 2: P -= t; break;
      case 3: Q -= t; break;
    }
    if (at < 1e-18) break;
    prev = at;
    double f = (mu - (2.0 * k + 1.0) * (2.0 * k + 1.0)) / ((k + 1.0) * 8.0 * x);
    if (f == 0.0) break;
    t *= f;
  }
  const double phase = nu * kPi / 2.0 + kPi / 4.0;
  const double c = std::cos(x), s = std::sin(x);
  const double cw = c * std::cos(phase) + s * std::sin(phase);
  const double sw = s * std::cos(phase) - c * std::sin(phase);
  return P * cw - Q * sw;
}

}  // namespace

double bessel_j(double nu, double x) {
  if (!(nu >= 0.0)) throw DomainError("bessel_j: order must be >= 0");
  if (!(x >= 0.0)) throw DomainError("bessel_j: argument must be >= 0");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (x < kSwitch) return std::pow(x, nu) * scaled_series(nu, x);
  return std::sqrt(2.0 / (kPi * x)) * hankel_core(nu, x);
}

double sphere_kernel_at_zero(int d) {
  if (d < 1) throw DomainError("sphere_kernel: dimension must be >= 1");
  const double nu = 0.5 * d - 1.0;
  return 1.0 / (std::pow(2.0, nu) * std::tgamma(nu + 1.0));
}

double sphere_kernel(int d, double r) {
  if (d < 1) throw DomainError("sphere_kernel: dimension must be >= 1");
  r = std::abs(r);
  static const double c = std::sqrt(2.0 / kPi);
  if (d == 1) return c * std::cos(r);
  if (d == 3) {
    if (r < 1e-4) return c * (1.0 - r * r / 6.0);
    return c * std::sin(r) / r;
  }
  const double nu = 0.5 * d - 1.0;
  if (r < kSwitch) return scaled_series(nu, r);
  return c * std::pow(r, -nu - 0.5) * hankel_core(nu, r);
}

double surface_measure(int l) {
  if (l < 1) throw DomainError("surface_measure: l must be >= 1");
  return 2.0 * std::pow(kPi, 0.5 * l) / std::tgamma(0.5 * l);
}

double hankel_a(double nu, int k) {
  double a = 1.0;
  for (int j = 1; j <= k; ++j) a *= (4.0 * nu * nu - (2.0 * j - 1.0) * (2.0 * j - 1.0)) / (j * 8.0);
  return a;
}

std::complex<double> hankel_alpha(int d, int l) {
  const double nu = 0.5 * d - 1.0;
  const std::complex<double> I(0.0, 1.0);
  std::complex<double> il = 1.0;
  for (int j = 0; j < l % 4; ++j) il *= I;
  return 0.5 * std::sqrt(2.0 / kPi) * std::exp(-I * (nu * kPi / 2.0 + kPi / 4.0)) * il * hankel_a(nu, l);
}

std::complex<double> asymptotic_sum(const SphereKernelParams& params, double z) {
  if (!(z > 0.0)) throw DomainError("asymptotic_sum: z must be positive");
  const std::complex<double> e = std::polar(1.0, z);
  double sum = 0.0;
  for (int l = 0; l < params.L; ++l) {
    std::complex<double> a = hankel_alpha(params.d, l);
    sum += std::pow(z, 0.5 * (1 - params.d) - l) * 2.0 * (a * e).real();
  }
  return {sum, 0.0};
}

KernelDecomposition::KernelDecomposition(int d, double split_radius) : d_(d), split_(split_radius) {
  if (d < 1) throw DomainError("decompose_kernel: dimension must be >= 1");
  if (!(split_radius > 0.0)) throw DomainError("decompose_kernel: split radius must be positive");
}

double KernelDecomposition::step(double s) const { return smooth_step(s / split_ - 1.0); }

double KernelDecomposition::j1(double s) const { return (1.0 - step(s)) * sphere_kernel(d_, s); }

std::complex<double> KernelDecomposition::envelope(double s) const {
  const double nu = 0.5 * d_ - 1.0;
  const std::complex<double> I(0.0, 1.0);
  const std::complex<double> pre = 0.5 * std::sqrt(2.0 / kPi) * std::exp(-I * (nu * kPi / 2.0 + kPi / 4.0));
  if (d_ == 1 || d_ == 3) return pre;
  static const Rule rule = composite_gl(0.0, 7.0, 14, 20);
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double t = rule.x[i], t2 = t * t;
    acc += rule.w[i] * std::exp(-t2) * std::pow(t, 2.0 * nu) *
           std::pow(std::complex<double>(1.0, t2 / (2.0 * s)), nu - 0.5);
  }
  return pre * 2.0 * acc / std::tgamma(nu + 0.5);
}

std::complex<double> KernelDecomposition::j2(double s) const {
  const double S = step(s);
  if (S == 0.0) return 0.0;
  return S * envelope(s);
}

double KernelDecomposition::reconstruct(double s) const {
  const std::complex<double> e = std::polar(1.0, s);
  return j1(s) + std::pow(s, 0.5 * (1 - d_)) * 2.0 * (j2(s) * e).real();
}

KernelDecomposition decompose_kernel(int d, double split_radius) { return KernelDecomposition(d, split_radius); }

}  // namespace blockrad
