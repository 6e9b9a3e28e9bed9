#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "blockrad/dyadic.hpp"
#include "blockrad/oscint.hpp"
#include "blockrad/profile.hpp"
#include "blockrad/specfun.hpp"
#include "blockrad/transform.hpp"

namespace blockrad {

// Tf = F^{-1}(f_hat dsigma), evaluated from the restriction of f_hat to the unit circle
// of the (rho1, rho2) quarter plane:
// Tf0(t1,t2) = int_0^{pi/2} f_hat0(cos, sin) J_{d-k}(t1 cos) J_k(t2 sin) cos^{d-k-1} sin^{k-1} dtheta.
// Output grids default to the input grids; n_theta = 0 picks a resolving node count.
BlockRadialProfile extend(const BlockRadialProfile& f, const OutputGrids& out = {}, int n_theta = 0);
// Same with f_hat0 sampled on the circle of radius r and Bessel arguments t r cos, t r sin.
BlockRadialProfile extend_at_radius(const BlockRadialProfile& f, double r, const OutputGrids& out = {},
                                    int n_theta = 0);
// Extension from a precomputed restriction (any radius).
BlockRadialProfile extend_restriction(const SphereRestriction& r, const Grid1D& out1, const Grid1D& out2);

// Dyadic piece Phi_j(rho) = chi(2^{-j} rho) sum_{l<L} rho^{(1-d)/2-l} (a_l e^{i rho} + conj(a_l) e^{-i rho}).
struct DyadicPiece {
  int j = 1;
  int L = 2;
  SphereKernelParams params;  // d and L
  int k = 1;                  // block split, needed by the kernel formula
  SmoothCutoff cutoff = make_partition(1).chi;
  void validate() const;
};

// Smallest admissible L (> (d-1)/2) when L = 0.
DyadicPiece make_piece(const Dimensions& dims, int j, int L = 0);

std::complex<double> phi_j(const DyadicPiece& piece, double rho);

// Radial Fourier transform of Phi_j: int Phi_j(rho) rho^{d-1} J_d(r rho) drho.
double phi_j_hat(const DyadicPiece& piece, double r);

// K_j(t, rho) = int_{S^{d-k-1}} int_{S^{k-1}} Phi_j(|(t1 e - rho1 w1, t2 e - rho2 w2)|) dw1 dw2
// in the Funk-Hecke form (needs d-k >= 2 and k >= 2). Real-valued.
std::complex<double> kernel_Kj(const DyadicPiece& piece, double t1, double t2, double rho1, double rho2,
                               const OscOptions& opt = {});

// Right-hand side shape 2^{j(1-d)/2} min{1,(2^{-j} rho1 t1)^{-(d-k-1)/2}} min{1,(2^{-j} rho2 t2)^{-(k-1)/2}}.
double kj_bound(const DyadicPiece& piece, double t1, double t2, double rho1, double rho2);

// Direct double-sphere quadrature of K_j (independent of the Funk-Hecke reduction).
std::complex<double> kernel_Kj_direct(const DyadicPiece& piece, double t1, double t2, double rho1, double rho2,
                                      int n_angle = 0);

enum class TjPath { multiplier, kernel };

struct TjOptions {
  TjPath path = TjPath::multiplier;
  std::optional<Grid1D> out1, out2;
  double kernel_budget = 2e5;  // max kernel evaluations on the kernel path
};

// T_j f = (2 pi)^{-d/2} Phi_j * (tau(|D|) f). The multiplier path applies Phi_j_hat(|xi|) tau(|xi|);
// the kernel path integrates K_j against the profile of tau(|D|) f.
BlockRadialProfile apply_Tj(const BlockRadialProfile& f, const DyadicPiece& piece, const TjOptions& opt = {});

// Near field plus remainder: kernel K_0 = chi0 J + sum_{1 <= j <= j_tail} chi_j (J - asymptotic_L),
// applied as the multiplier K_0_hat(|xi|) tau(|xi|). The remainder decays like rho^{(1-d)/2-L}.
struct T0Options {
  int L = 0;
  int j_tail = 8;
  std::optional<Grid1D> out1, out2;
};
BlockRadialProfile apply_T0(const BlockRadialProfile& f, const T0Options& opt = {});
double t0_kernel(const Dimensions& dims, int L, int j_tail, double rho);

// Frequency grid on [0, 3/2] (the support of tau) resolving kernels supported in rho <= kernel_reach
// and outputs up to out_rmax.
Grid1D annulus_frequency_grid(double kernel_reach, double out_rmax);

struct RatioRow {
  int j;
  double t1, t2, rho1, rho2;
  double value, bound, ratio;
};

struct RatioReport {
  std::vector<RatioRow> rows;
  int fit_j_max = 2;
  double c_star = 0.0;
  double exceedance = 0.0;
};

struct KjPoint {
  double t1, t2, rho1, rho2;  // in units of 2^j
};

// Deterministic sweep of scaled points with the phase range meeting [1/2, 2].
std::vector<KjPoint> make_kj_sweep(int count, unsigned seed = 12345);

// C* = max ratio over j <= fit_j_max, exceedance = max ratio / C*.
RatioReport check_Kj_bound(const Dimensions& dims, const std::vector<int>& js, const std::vector<KjPoint>& points,
                           int fit_j_max = 2, const OscOptions& opt = {});

struct ScalingRow {
  int j;
  double l2_ratio;       // ||T_j f||_2 / (2^{j/2} ||f||_{p_ST})
  double lorentz_ratio;  // ||T_j f||_{p',inf} / (2^{j((1+d)/2 - d/p)} ||f||_{p,1}), p = 2m/(m+1)
};

struct ScalingReport {
  double p_st = 0.0;
  double p_lorentz = 0.0;
  std::vector<std::vector<ScalingRow>> rows;  // per family member
  double l2_spread = 0.0;                     // max/min over j, worst member
  double lorentz_spread = 0.0;
  bool uniform = true;  // both spreads below 2
};

double p_stein_tomas(const Dimensions& dims);

ScalingReport check_Tj_scaling(const std::vector<BlockRadialProfile>& family, const std::vector<int>& js);

}  // namespace blockrad
