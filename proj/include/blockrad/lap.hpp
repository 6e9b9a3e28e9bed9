#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "blockrad/dyadic.hpp"
#include "blockrad/profile.hpp"
#include "blockrad/symbol.hpp"
#include "blockrad/transform.hpp"

namespace blockrad {

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> violations;
  int derivative_order = 0;        // floor(d/2) + 1
  std::vector<double> slopes;      // fitted log-log slope of |(r^s/P)^{(k)}| for k = 1..derivative_order
  std::vector<double> zero_slopes; // |P'(r_m)|
};

// Spot checks of the symbol assumptions in dimension d. Decay is probed by finite differences
// of r^s/P(r) with step proportional to r on a log grid in [r_from, 1e3]; r_from = 0 picks
// max(10, 4 r_M). The decay clause requires slope < -k - slope_margin.
ValidationReport validate_symbol(const SymbolModel& symbol, int d, double slope_margin = 0.0, double r_from = 0.0);

// Linear functional approximating p.v. int_window g(r) / (r - r0) dr by singularity subtraction
// with an even bump eta (eta(0) = 1): sum c_i g(x_i) + c0 g(r0).
struct PvRule {
  std::vector<double> x, c;
  double c0 = 0.0;
};
// eta is given in the offset variable r - r0. Panels are no wider than max_width.
PvRule pv_rule(double r0, Interval window, const SmoothCutoff& eta, double max_width, int order = 16);

double pv_integral(const std::function<double(double)>& g, double r0, Interval window, const SmoothCutoff& eta,
                   double max_width = 1.0 / 16);

// Window of the m-th zero (support of chi_m) and the bump used for subtraction there.
Interval zero_window(const SymbolModel& symbol, int m);
SmoothCutoff zero_eta(const SymbolModel& symbol, int m);

// Boundary value of int chi_m h / P: -i pi h(r_m) / |P'(r_m)| + p.v. int chi_m h / P.
std::complex<double> plemelj_limit(const SymbolModel& symbol, int m, const std::function<double(double)>& h);
// The same integral with P + i eps in the denominator (graded quadrature around r_m).
std::complex<double> plemelj_eps(const SymbolModel& symbol, int m, const std::function<double(double)>& h, double eps);

// Richardson extrapolation to 0 of values at eps_0 2^{-i}, assuming an expansion in integer powers.
std::complex<double> richardson(const std::vector<std::complex<double>>& values);

// Phi^m(z) = -i pi r_m^{d-1} |P'(r_m)|^{-1} J(r_m z) + p.v. int chi_m(r) r^{d-1} P(r)^{-1} J(r z) dr.
std::complex<double> phi_m_kernel(const SymbolModel& symbol, int m, int d, double z, double z_max = 1e4);

// R f = F^{-1}(chi0 / P f_hat).
BlockRadialProfile regular_part(const BlockRadialProfile& f, const SymbolModel& symbol, const MultiplierGrids& grids = {});

struct ResolventField {
  BlockRadialProfile profile;               // u_f
  BlockRadialProfile regular;               // R f
  std::vector<BlockRadialProfile> delta;    // -i pi r_m^{d-1} |P'(r_m)|^{-1} E(r_m)
  std::vector<BlockRadialProfile> pv;       // p.v. int chi_m r^{d-1} P^{-1} E(r) dr
  std::vector<int> pv_nodes;                // radii sampled per zero
  double band_tail = 0.0;                   // relative f_hat mass above 0.8 of the frequency reach
};

struct ResolveOptions {
  std::optional<Grid1D> out1, out2;
  double band_tolerance = 1e-8;
};

// Fraction of ||f_hat||^2 above 0.8 of the resolved frequency reach.
double band_tail(const BlockRadialProfile& f);

// Outgoing solution of P(|D|) u = f through the radial frequency integral
// u = int r^{d-1} / (P(r) + i0) E(r) dr, E(r) = extend_at_radius(f, r).
ResolventField resolve(const BlockRadialProfile& f, const SymbolModel& symbol, const ResolveOptions& opt = {});

// u_eps = int r^{d-1} / (P(r) + i eps) E(r) dr in polar frequency coordinates.
BlockRadialProfile eps_resolvent(const BlockRadialProfile& f, const SymbolModel& symbol, double eps,
                                 const ResolveOptions& opt = {});

// Residual ||P(|D|)(eta u) - f|| / ||f|| on the ball |x| <= 3R/8, with R the grid reach and eta a
// smooth radial taper from 5R/8 to 19R/20 (u itself is not square integrable).
struct ResidualReport {
  double relative = 0.0;
  double ball_radius = 0.0;
  double taper_start = 0.0, taper_end = 0.0;
};
ResidualReport resolvent_residual(const BlockRadialProfile& f, const SymbolModel& symbol, const BlockRadialProfile& u);

// Weighted L^2 norm over the ball |x| <= radius.
double ball_norm(const BlockRadialProfile& f, double radius);

struct SlopeReport {
  double leading_slope = 0.0;   // envelope slope of |Phi^m|
  double residual_slope = 0.0;  // envelope slope after removing the fitted leading term
  double frequency = 0.0;       // from zero-crossing spacing of Im Phi^m
  double expected_leading = 0.0;
  std::vector<double> z, abs_phi;
};

SlopeReport check_phim_asymptotics(const SymbolModel& symbol, int m, int d, double z_lo = 20.0, double z_hi = 200.0);

}  // namespace blockrad
