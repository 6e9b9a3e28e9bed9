#pragma once

#include <vector>

namespace blockrad {

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
  std::size_t size() const { return x.size(); }
};

// Gauss-Jacobi rule on [-1,1] for the weight (1-x)^a (1+x)^b, a,b > -1.
// Rules are cached; the returned reference stays valid for the program lifetime.
const Rule& gauss_jacobi(int n, double a, double b);

inline const Rule& gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

// Gauss-Lobatto-Legendre rule on [-1,1] with n >= 2 points including both endpoints.
const Rule& gauss_lobatto(int n);

// Rule on [lo,hi] obtained from a reference rule on [-1,1] by the affine map.
Rule mapped(const Rule& ref, double lo, double hi);

// Composite Gauss-Legendre on [lo,hi] with `panels` equal panels of n nodes.
Rule composite_gl(double lo, double hi, int panels, int n);

// Composite Gauss-Legendre on [lo,hi] with panels graded geometrically toward `focus`
// (an interior or end point). Panel widths shrink by 1/2 down to `min_width`.
Rule graded_gl(double lo, double hi, double focus, double min_width, int n);

// Composite Gauss-Legendre over sorted breakpoints: panels no wider than max_width, and the
// panels touching each breakpoint split geometrically toward it (`levels` halvings). Suited
// to integrands built from C-infinity cutoffs that are flat at the breakpoints.
Rule breakpoint_graded_gl(const std::vector<double>& breaks, double max_width, int n, int levels);

// Composite rule for the weight (1-s)^a (1+s)^b on [-1,1]: end panels use Gauss-Jacobi
// with the singular factor, interior panels use Gauss-Legendre with the full weight folded in.
Rule composite_jacobi(double a, double b, int panels, int n);

}  // namespace blockrad
