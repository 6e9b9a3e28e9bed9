#pragma once

#include <complex>

namespace blockrad {

// Bessel function of the first kind J_nu(x) for real nu >= 0, x >= 0.
double bessel_j(double nu, double x);

// Sphere kernel J_d(r) = r^{1-d/2} J_{d/2-1}(r), i.e. (2 pi)^{-d/2} times the Fourier
// transform of surface measure on S^{d-1} at |x| = r. d = 1 (a one-dimensional block)
// gives sqrt(2/pi) cos r.
double sphere_kernel(int d, double r);

// Value of the sphere kernel at the origin, (2 pi)^{-d/2} |S^{d-1}|.
double sphere_kernel_at_zero(int d);

// Hausdorff measure of the unit sphere S^{l-1} in R^l; |S^0| = 2.
double surface_measure(int l);

// Hankel coefficient a_k(nu) = prod_{j=1}^k (4 nu^2 - (2j-1)^2) / (k! 8^k).
double hankel_a(double nu, int k);

struct SphereKernelParams {
  int d = 3;
  int L = 1;
};

// alpha_l in J_d(z) ~ sum_l z^{(1-d)/2-l} (alpha_l e^{iz} + conj(alpha_l) e^{-iz}).
std::complex<double> hankel_alpha(int d, int l);

// Partial sum of the large-argument expansion with L terms; imaginary part is zero.
std::complex<double> asymptotic_sum(const SphereKernelParams& params, double z);

// J_d(s) = J1(s) + s^{(1-d)/2} (J2(s) e^{is} + conj(J2(s)) e^{-is}).
// J1 = (1 - S) J_d with a smooth step S vanishing on [0, split] and equal to 1 on
// [2 split, inf). J2 = S times the Hankel envelope, evaluated from the integral
// representation of H^{(1)}.
class KernelDecomposition {
 public:
  KernelDecomposition(int d, double split_radius);

  int dimension() const { return d_; }
  double split_radius() const { return split_; }

  double step(double s) const;
  double j1(double s) const;
  std::complex<double> j2(double s) const;
  // Right-hand side of the reconstruction identity.
  double reconstruct(double s) const;
  // Envelope without the step: w(s) (1/2) sqrt(2/pi) e^{-i(nu pi/2 + pi/4)}.
  std::complex<double> envelope(double s) const;

 private:
  int d_;
  double split_;
};

KernelDecomposition decompose_kernel(int d, double split_radius = 1.0);

}  // namespace blockrad
