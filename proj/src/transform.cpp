#include "blockrad/transform.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <iostream>
#include <mutex>
#include <sstream>

#include "blockrad/diagnostics.hpp"
#include "blockrad/errors.hpp"
#include "blockrad/quadrature.hpp"
#include "blockrad/specfun.hpp"
#include "blockrad/symbol.hpp"

namespace blockrad {

namespace {
std::mutex warn_mutex;
WarningHandler& handler() {
  static WarningHandler h = [](const std::string& m) { std::cerr << "warning: " << m << '\n'; };
  return h;
}
}  // namespace

void set_warning_handler(WarningHandler h) {
  std::lock_guard<std::mutex> lock(warn_mutex);
  if (h)
    handler() = std::move(h);
  else
    handler() = [](const std::string&) {};
}

void warn(const std::string& message) {
  std::lock_guard<std::mutex> lock(warn_mutex);
  handler()(message);
}

namespace {

using RMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void split(const BlockRadialProfile& f, RMat& re, RMat& im) {
  re.resize(f.n1(), f.n2());
  im.resize(f.n1(), f.n2());
  for (std::size_t i = 0; i < f.n1(); ++i)
    for (std::size_t j = 0; j < f.n2(); ++j) {
      re(i, j) = f.at(i, j).real();
      im(i, j) = f.at(i, j).imag();
    }
}

void join(BlockRadialProfile& f, const RMat& re, const RMat& im) {
  for (std::size_t i = 0; i < f.n1(); ++i)
    for (std::size_t j = 0; j < f.n2(); ++j) f.at(i, j) = {re(i, j), im(i, j)};
}

// K(a, i) = J_l(r_a rho_i) rho_i^{l-1} w_i
RMat hankel_matrix(int l, const std::vector<double>& r, const Grid1D& in, double scale = 1.0) {
  RMat K(r.size(), in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    const double jac = (l == 1 ? 1.0 : std::pow(in.x[i], l - 1)) * in.w[i];
    for (std::size_t a = 0; a < r.size(); ++a) K(a, i) = sphere_kernel(l, scale * r[a] * in.x[i]) * jac;
  }
  return K;
}

void check_resolution(const Grid1D& in, double out_rmax, const char* what) {
  if (!transform_resolved(in, out_rmax)) {
    std::ostringstream m;
    m << what << ": kernel under-resolved (output radius " << out_rmax << " over input grid to " << in.rmax() << ")";
    warn(m.str());
  }
}

}  // namespace

bool transform_resolved(const Grid1D& in, double out_rmax) {
  if (in.panel_order >= 2) {
    const std::size_t step = in.panel_order - 1;
    const double budget = 0.8 * step;
    for (std::size_t p = 0; p + step < in.size(); p += step)
      if (out_rmax * (in.x[p + step] - in.x[p]) > budget * (1 + 1e-12)) return false;
    return true;
  }
  for (std::size_t i = 0; i + 1 < in.size(); ++i)
    if (in.x[i + 1] - in.x[i] > M_PI / (4.0 * out_rmax)) return false;
  return true;
}

Grid1D resolved_frequency_grid(const Grid1D& spatial, double out_rmax, int order) {
  double width = 0.0;
  if (spatial.panel_order >= 2) {
    const std::size_t step = spatial.panel_order - 1;
    for (std::size_t p = 0; p + step < spatial.size(); p += step) width = std::max(width, spatial.x[p + step] - spatial.x[p]);
  }
  const double budget = 0.8 * (order - 1);
  double F;
  if (width > 0.0) {
    F = 0.8 * (spatial.panel_order - 1) / width;
  } else {
    double h = 0.0;
    for (std::size_t i = 0; i + 1 < spatial.size(); ++i) h = std::max(h, spatial.x[i + 1] - spatial.x[i]);
    F = M_PI / (4.0 * h);
  }
  const int panels = std::max(1, int(std::ceil(F * out_rmax / budget)));
  return make_panel_grid(F, panels, order);
}

BlockRadialProfile hankel_pass(const BlockRadialProfile& f, int axis, const Grid1D& out_grid) {
  const Dimensions& D = f.dims();
  RMat re, im;
  split(f, re, im);
  if (axis == 1) {
    check_resolution(f.grid1(), out_grid.rmax(), "hankel_pass");
    const RMat K = hankel_matrix(D.dy(), out_grid.x, f.grid1());
    RMat ore = K * re, oim = K * im;
    BlockRadialProfile out(D, out_grid, f.grid2());
    join(out, ore, oim);
    return out;
  }
  check_resolution(f.grid2(), out_grid.rmax(), "hankel_pass");
  const RMat K = hankel_matrix(D.dz(), out_grid.x, f.grid2());
  RMat ore = re * K.transpose(), oim = im * K.transpose();
  BlockRadialProfile out(D, f.grid1(), out_grid);
  join(out, ore, oim);
  return out;
}

BlockRadialProfile forward_transform(const BlockRadialProfile& f, const OutputGrids& out) {
  const Grid1D g1 = out.g1 ? *out.g1 : f.grid1();
  const Grid1D g2 = out.g2 ? *out.g2 : f.grid2();
  // run the cheaper ordering first
  if (g1.size() * f.n2() <= f.n1() * g2.size()) return hankel_pass(hankel_pass(f, 1, g1), 2, g2);
  return hankel_pass(hankel_pass(f, 2, g2), 1, g1);
}

BlockRadialProfile inverse_transform(const BlockRadialProfile& f_hat, const OutputGrids& out) {
  return forward_transform(f_hat, out);
}

AngularRule angular_rule(const Dimensions& dims, int n) {
  const double a = dims.dy() - 1, b = dims.dz() - 1;
  const Rule& gj = gauss_jacobi(n, 0.5 * (b - 1.0), 0.5 * (a - 1.0));
  const double scale = std::pow(2.0, -0.5 * (a - 1.0) - 0.5 * (b - 1.0)) / 4.0;
  AngularRule r;
  for (std::size_t i = 0; i < gj.size(); ++i) {
    const double x = gj.x[i];
    const double c = std::sqrt(0.5 * (1.0 + x)), s = std::sqrt(0.5 * (1.0 - x));
    r.theta.push_back(std::atan2(s, c));
    r.c.push_back(c);
    r.s.push_back(s);
    r.w.push_back(gj.w[i] * scale);
  }
  return r;
}

int angular_nodes_for(double t_max, double radius) { return 64 + int(std::ceil(0.75 * t_max * radius)); }

SphereRestriction restrict_to_sphere(const BlockRadialProfile& f_hat, int n_theta) {
  if (n_theta < 64) throw DomainError("restrict_to_sphere: need at least 64 angular nodes");
  if (f_hat.grid1().rmax() < 1.0 || f_hat.grid2().rmax() < 1.0)
    throw CoverageError("restrict_to_sphere: grid does not cover the unit circle");
  SphereRestriction out;
  out.dims = f_hat.dims();
  out.rule = angular_rule(out.dims, n_theta);
  out.values.resize(out.rule.size());
  for (std::size_t i = 0; i < out.rule.size(); ++i) out.values[i] = f_hat.interpolate(out.rule.c[i], out.rule.s[i]);
  return out;
}

SphereRestriction restrict_from_spatial(const BlockRadialProfile& f, double radius, int n_theta) {
  SphereRestriction out;
  out.dims = f.dims();
  out.radius = radius;
  out.rule = angular_rule(out.dims, n_theta);
  const std::size_t nt = out.rule.size();
  std::vector<double> rc(nt), rs(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    rc[t] = radius * out.rule.c[t];
    rs[t] = radius * out.rule.s[t];
  }
  check_resolution(f.grid1(), radius, "restrict_from_spatial");
  check_resolution(f.grid2(), radius, "restrict_from_spatial");
  const RMat A1 = hankel_matrix(f.dims().dy(), rc, f.grid1());
  const RMat A2 = hankel_matrix(f.dims().dz(), rs, f.grid2());
  RMat re, im;
  split(f, re, im);
  const RMat Mre = re * A2.transpose(), Mim = im * A2.transpose();  // N1 x Nt
  out.values.resize(nt);
  for (std::size_t t = 0; t < nt; ++t)
    out.values[t] = {A1.row(t).dot(Mre.col(t)), A1.row(t).dot(Mim.col(t))};
  return out;
}

double sphere_l2(const SphereRestriction& r) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.values.size(); ++i) s += r.rule.w[i] * std::norm(r.values[i]);
  return r.dims.c_dk() * s;
}

BlockRadialProfile apply_multiplier_hat(const BlockRadialProfile& f_hat, const std::function<cplx(double)>& phi,
                                        const OutputGrids& out) {
  BlockRadialProfile g = f_hat;
  for (std::size_t i = 0; i < g.n1(); ++i)
    for (std::size_t j = 0; j < g.n2(); ++j) {
      const double r = std::hypot(g.grid1().x[i], g.grid2().x[j]);
      g.at(i, j) *= phi(r);
    }
  return inverse_transform(g, out);
}

BlockRadialProfile apply_multiplier(const BlockRadialProfile& f, const std::function<cplx(double)>& phi,
                                    const MultiplierGrids& grids) {
  OutputGrids fq{grids.freq1 ? grids.freq1 : resolved_frequency_grid(f.grid1(), (grids.out1 ? *grids.out1 : f.grid1()).rmax()),
                 grids.freq2 ? grids.freq2 : resolved_frequency_grid(f.grid2(), (grids.out2 ? *grids.out2 : f.grid2()).rmax())};
  OutputGrids back{grids.out1 ? grids.out1 : std::optional<Grid1D>(f.grid1()),
                   grids.out2 ? grids.out2 : std::optional<Grid1D>(f.grid2())};
  return apply_multiplier_hat(forward_transform(f, fq), phi, back);
}

BlockRadialProfile apply_symbol(const BlockRadialProfile& u, const SymbolModel& symbol, const MultiplierGrids& grids) {
  const auto P = symbol.P;
  return apply_multiplier(u, [P](double r) { return cplx(P(r)); }, grids);
}

}  // namespace blockrad
