#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "blockrad/profile.hpp"

namespace blockrad {

struct SymbolModel;

// Output grids for a transform; unset axes reuse the input grid.
struct OutputGrids {
  std::optional<Grid1D> g1;
  std::optional<Grid1D> g2;
};

// f_hat0(r1,r2) = int int f0 J_{d-k}(r1 rho1) J_k(r2 rho2) rho1^{d-k-1} rho2^{k-1} drho1 drho2,
// as two separable passes. The same kernel gives the inverse transform.
BlockRadialProfile forward_transform(const BlockRadialProfile& f, const OutputGrids& out = {});
BlockRadialProfile inverse_transform(const BlockRadialProfile& f_hat, const OutputGrids& out = {});

// One separable pass: rows (axis 1) or columns (axis 2) with kernel J_l(r rho).
BlockRadialProfile hankel_pass(const BlockRadialProfile& f, int axis, const Grid1D& out_grid);

// True when every input panel resolves the oscillation e^{i r_out_max rho}.
bool transform_resolved(const Grid1D& in, double out_rmax);

// Frequency grid [0, F] with F the largest frequency the spatial grid resolves, and
// panels fine enough to map back to spatial radius out_rmax.
Grid1D resolved_frequency_grid(const Grid1D& spatial, double out_rmax, int order = 17);

// Angular quadrature on [0, pi/2] for the weight cos^{d-k-1} theta sin^{k-1} theta
// (Gauss-Jacobi in x = cos 2 theta).
struct AngularRule {
  std::vector<double> theta, c, s, w;  // nodes, cos, sin, weights
  std::size_t size() const { return theta.size(); }
};
AngularRule angular_rule(const Dimensions& dims, int n);

struct SphereRestriction {
  Dimensions dims;
  double radius = 1.0;
  AngularRule rule;
  std::vector<cplx> values;  // f_hat0(radius cos theta_i, radius sin theta_i)
};

// Interpolates a frequency-side profile on the unit circle.
SphereRestriction restrict_to_sphere(const BlockRadialProfile& f_hat, int n_theta = 128);
// Evaluates f_hat0 on the circle of the given radius directly from the spatial profile.
SphereRestriction restrict_from_spatial(const BlockRadialProfile& f, double radius, int n_theta);
// Angular node count that resolves J(t radius cos theta) for |t| <= t_max.
int angular_nodes_for(double t_max, double radius = 1.0);

// c_{d,k} int_0^{pi/2} |f_hat0|^2 cos^{d-k-1} sin^{k-1} dtheta.
double sphere_l2(const SphereRestriction& r);

// Radial multiplier phi(|D|); frequency grids default to resolved_frequency_grid of the
// input grids, output grids to the input grids.
struct MultiplierGrids {
  std::optional<Grid1D> freq1, freq2;
  std::optional<Grid1D> out1, out2;
};
BlockRadialProfile apply_multiplier(const BlockRadialProfile& f, const std::function<cplx(double)>& phi,
                                    const MultiplierGrids& grids = {});
// Multiplier applied to a frequency-side profile followed by the inverse transform.
BlockRadialProfile apply_multiplier_hat(const BlockRadialProfile& f_hat, const std::function<cplx(double)>& phi,
                                        const OutputGrids& out = {});
BlockRadialProfile apply_symbol(const BlockRadialProfile& u, const SymbolModel& symbol, const MultiplierGrids& grids = {});

}  // namespace blockrad
