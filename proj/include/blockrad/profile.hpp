#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace blockrad {

using cplx = std::complex<double>;

// R^d = R^{d-k} x R^k with block-radial variables rho1 = |y|, rho2 = |z|.
struct Dimensions {
  int d = 3;
  int k = 1;

  int dy() const { return d - k; }
  int dz() const { return k; }
  int m() const { return dy() < dz() ? dy() : dz(); }
  // c_{d,k} = |S^{d-k-1}| |S^{k-1}|
  double c_dk() const;
  void validate() const;
};

// Radial nodes with quadrature weights for dx on [0, rmax] (no radial Jacobian).
// Panel grids are unions of Gauss-Lobatto panels sharing endpoints; panel_order is
// the number of nodes per panel, 0 for unstructured node sets (trapezoid weights).
struct Grid1D {
  std::vector<double> x;
  std::vector<double> w;
  int panel_order = 0;

  std::size_t size() const { return x.size(); }
  double rmax() const { return x.empty() ? 0.0 : x.back(); }
  bool operator==(const Grid1D&) const = default;
};

// Weights for arbitrary nodes; panel_order >= 2 requires (n-1) % (panel_order-1) == 0.
Grid1D make_grid_from_nodes(std::vector<double> nodes, int panel_order);
// Gauss-Lobatto panels of the given order, uniform panel widths.
Grid1D make_panel_grid(double rmax, int panels, int order);
// Gauss-Lobatto panels with breakpoints given explicitly (first must be 0).
Grid1D make_panel_grid(const std::vector<double>& breaks, int order);
// Default profile grid: R_max = 40, 24 panels of 17 Lobatto nodes (385 nodes).
Grid1D default_grid();

class BlockRadialProfile {
 public:
  BlockRadialProfile() = default;
  BlockRadialProfile(Dimensions dims, Grid1D g1, Grid1D g2);
  BlockRadialProfile(Dimensions dims, Grid1D g1, Grid1D g2, const std::function<cplx(double, double)>& f);

  const Dimensions& dims() const { return dims_; }
  const Grid1D& grid1() const { return g1_; }
  const Grid1D& grid2() const { return g2_; }
  std::size_t n1() const { return g1_.size(); }
  std::size_t n2() const { return g2_.size(); }

  cplx& at(std::size_t i, std::size_t j) { return v_[i * g2_.size() + j]; }
  const cplx& at(std::size_t i, std::size_t j) const { return v_[i * g2_.size() + j]; }
  std::vector<cplx>& values() { return v_; }
  const std::vector<cplx>& values() const { return v_; }

  // Measure of the cell around node (i,j): c_{d,k} rho1^{d-k-1} rho2^{k-1} w1_i w2_j.
  double measure(std::size_t i, std::size_t j) const;
  // Radial measures per axis: |S^{l-1}| rho^{l-1} w.
  std::vector<double> axis_measure1() const;
  std::vector<double> axis_measure2() const;

  // Panel-polynomial interpolation (cubic Lagrange on unstructured grids); 0 outside the grid.
  cplx interpolate(double r1, double r2) const;

  BlockRadialProfile& operator+=(const BlockRadialProfile& o);
  BlockRadialProfile& operator-=(const BlockRadialProfile& o);
  BlockRadialProfile& operator*=(cplx c);
  BlockRadialProfile real_part() const;
  BlockRadialProfile imag_part() const;
  bool finite() const;

 private:
  Dimensions dims_;
  Grid1D g1_, g2_;
  std::vector<cplx> v_;
};

BlockRadialProfile operator+(BlockRadialProfile a, const BlockRadialProfile& b);
BlockRadialProfile operator-(BlockRadialProfile a, const BlockRadialProfile& b);
BlockRadialProfile operator*(cplx c, BlockRadialProfile a);

// Interpolation weights of node set `grid` at point r (indices and coefficients).
struct Stencil {
  std::size_t first = 0;
  std::vector<double> c;
};
Stencil interpolation_stencil(const Grid1D& grid, double r);

// Resamples a profile onto new grids by interpolation.
BlockRadialProfile resample(const BlockRadialProfile& f, const Grid1D& g1, const Grid1D& g2);

// Lorentz exponent pair (p, r) with r in {1, p, inf}.
struct LorentzSpec {
  double p = 2.0;
  double r = 2.0;
  void validate() const;
};
LorentzSpec lebesgue(double p);
LorentzSpec strong_lorentz(double p);  // (p, 1)
LorentzSpec weak_lorentz(double p);    // (p, inf)
LorentzSpec dual(const LorentzSpec& s);
double conjugate_exponent(double p);

enum class MixedOrder { y_outer, z_outer };

double lebesgue_norm(const BlockRadialProfile& f, double p);
double lorentz_norm(const BlockRadialProfile& f, const LorentzSpec& spec);
double mixed_norm(const BlockRadialProfile& f, const LorentzSpec& p1, const LorentzSpec& p2, MixedOrder order);
// Sum of the two mixed norms with dual exponents.
double x_dual_norm(const BlockRadialProfile& f, const LorentzSpec& p1, const LorentzSpec& p2);
// Upper bound for the X_p norm: min over the two orders.
double x_norm_upper(const BlockRadialProfile& f, const LorentzSpec& p1, const LorentzSpec& p2);

// Lorentz norm of a nonnegative step function given by values a_i on sets of measure mu_i.
double lorentz_from_samples(std::vector<double> values, const std::vector<double>& measures, const LorentzSpec& spec);

// Weighted L^2 inner product <f, g> = sum mu f conj(g).
cplx inner_product(const BlockRadialProfile& f, const BlockRadialProfile& g);

// Serialization. Text: header lines then rows "rho1 rho2 re im" at 17 significant digits.
void save_text(const BlockRadialProfile& f, std::ostream& out);
BlockRadialProfile load_text(std::istream& in);
void save_binary(const BlockRadialProfile& f, std::ostream& out);
BlockRadialProfile load_binary(std::istream& in);
void save_profile(const BlockRadialProfile& f, const std::string& path);  // binary iff path ends in .bin
BlockRadialProfile load_profile(const std::string& path);

}  // namespace blockrad
