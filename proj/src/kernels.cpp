#include "blockrad/kernels.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "blockrad/errors.hpp"
#include "blockrad/quadrature.hpp"

namespace blockrad {

namespace {

using CMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Radial function tabulated on a Lobatto panel grid and interpolated panelwise.
class RadialTable {
 public:
  RadialTable(Grid1D grid, std::vector<double> values) : grid_(std::move(grid)), v_(std::move(values)) {}
  double operator()(double r) const {
    if (r < 0.0 || r > grid_.rmax()) return 0.0;
    const Stencil s = interpolation_stencil(grid_, r);
    double acc = 0.0;
    for (std::size_t i = 0; i < s.c.size(); ++i) acc += s.c[i] * v_[s.first + i];
    return acc;
  }

 private:
  Grid1D grid_;
  std::vector<double> v_;
};

// Radial Fourier transform int K(rho) rho^{d-1} J_d(r rho) drho tabulated over r in [0, 3/2].
RadialTable radial_transform_table(int d, const Rule& rho_rule, const std::function<double(double)>& K,
                                   double reach) {
  std::vector<double> c(rho_rule.size());
  for (std::size_t i = 0; i < rho_rule.size(); ++i) {
    const double rho = rho_rule.x[i];
    c[i] = rho_rule.w[i] * K(rho) * std::pow(rho, d - 1);
  }
  // panel width 0.4 * 16 / reach keeps 17 nodes per panel well inside the resolution rule
  const int panels = std::max(4, int(std::ceil(1.5 * reach / 6.4)));
  Grid1D g = make_panel_grid(1.5, panels, 17);
  std::vector<double> v(g.size(), 0.0);
  for (std::size_t a = 0; a < g.size(); ++a) {
    if (g.x[a] < 0.4) continue;  // tau vanishes below 1/2
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0.0) s += c[i] * sphere_kernel(d, g.x[a] * rho_rule.x[i]);
    v[a] = s;
  }
  return RadialTable(std::move(g), std::move(v));
}

Rule dyadic_rho_rule(const std::vector<double>& breaks) {
  // integrand oscillates at most like e^{i 2.5 rho}; panels of width 1.5 keep it at under 4 radians
  return breakpoint_graded_gl(breaks, 1.5, 20, 10);
}

BlockRadialProfile apply_radial_multiplier(const BlockRadialProfile& f, const RadialTable& table, double reach,
                                           const std::optional<Grid1D>& out1, const std::optional<Grid1D>& out2) {
  const Grid1D o1 = out1 ? *out1 : f.grid1();
  const Grid1D o2 = out2 ? *out2 : f.grid2();
  const Grid1D fq = annulus_frequency_grid(reach, std::max(o1.rmax(), o2.rmax()));
  const SmoothCutoff tau = make_tau();
  MultiplierGrids grids{fq, fq, o1, o2};
  return apply_multiplier(f, [&](double r) { return cplx(tau(r) * table(r)); }, grids);
}

// Point set on S^{n-1} in product coordinates: trapezoid in the azimuth, Gauss-Legendre in
// the polar angles with the sin^{n-2} Jacobian.
struct SpherePoints {
  std::vector<std::vector<double>> x;
  std::vector<double> w;
};

SpherePoints sphere_points(int n, int N) {
  SpherePoints out;
  if (n == 1) {
    out.x = {{1.0}, {-1.0}};
    out.w = {1.0, 1.0};
    return out;
  }
  if (n == 2) {
    for (int i = 0; i < N; ++i) {
      const double phi = 2.0 * M_PI * i / N;
      out.x.push_back({std::cos(phi), std::sin(phi)});
      out.w.push_back(2.0 * M_PI / N);
    }
    return out;
  }
  const SpherePoints sub = sphere_points(n - 1, N);
  const Rule th = mapped(gauss_legendre(N), 0.0, M_PI);
  for (std::size_t a = 0; a < th.size(); ++a) {
    const double c = std::cos(th.x[a]), s = std::sin(th.x[a]);
    const double wa = th.w[a] * std::pow(s, n - 2);
    for (std::size_t b = 0; b < sub.x.size(); ++b) {
      std::vector<double> p{c};
      for (double v : sub.x[b]) p.push_back(s * v);
      out.x.push_back(std::move(p));
      out.w.push_back(wa * sub.w[b]);
    }
  }
  return out;
}

}  // namespace

BlockRadialProfile extend_restriction(const SphereRestriction& r, const Grid1D& out1, const Grid1D& out2) {
  const Dimensions& D = r.dims;
  const std::size_t nt = r.rule.size();
  Eigen::MatrixXd A1(out1.size(), nt), A2(out2.size(), nt);
  for (std::size_t i = 0; i < nt; ++i) {
    for (std::size_t a = 0; a < out1.size(); ++a) A1(a, i) = sphere_kernel(D.dy(), out1.x[a] * r.radius * r.rule.c[i]);
    for (std::size_t b = 0; b < out2.size(); ++b) A2(b, i) = sphere_kernel(D.dz(), out2.x[b] * r.radius * r.rule.s[i]);
  }
  Eigen::MatrixXd Wre(nt, out2.size()), Wim(nt, out2.size());
  for (std::size_t i = 0; i < nt; ++i) {
    const cplx wv = r.rule.w[i] * r.values[i];
    Wre.row(i) = wv.real() * A2.col(i).transpose();
    Wim.row(i) = wv.imag() * A2.col(i).transpose();
  }
  const Eigen::MatrixXd Ere = A1 * Wre, Eim = A1 * Wim;
  BlockRadialProfile out(D, out1, out2);
  for (std::size_t a = 0; a < out1.size(); ++a)
    for (std::size_t b = 0; b < out2.size(); ++b) out.at(a, b) = {Ere(a, b), Eim(a, b)};
  return out;
}

BlockRadialProfile extend_at_radius(const BlockRadialProfile& f, double r, const OutputGrids& out, int n_theta) {
  if (!(r > 0.0)) throw DomainError("extend_at_radius: radius must be positive");
  const Grid1D o1 = out.g1 ? *out.g1 : f.grid1();
  const Grid1D o2 = out.g2 ? *out.g2 : f.grid2();
  const int n = n_theta > 0 ? n_theta : angular_nodes_for(std::max(o1.rmax(), o2.rmax()), r);
  return extend_restriction(restrict_from_spatial(f, r, n), o1, o2);
}

BlockRadialProfile extend(const BlockRadialProfile& f, const OutputGrids& out, int n_theta) {
  return extend_at_radius(f, 1.0, out, n_theta);
}

void DyadicPiece::validate() const {
  if (j < 1) throw DomainError("DyadicPiece: j must be >= 1");
  if (!(2 * L > params.d - 1)) throw DomainError("DyadicPiece: need L > (d-1)/2");
  if (params.L != L) throw DomainError("DyadicPiece: params.L must equal L");
  if (k < 1 || k >= params.d) throw DomainError("DyadicPiece: need 1 <= k < d");
}

DyadicPiece make_piece(const Dimensions& dims, int j, int L) {
  dims.validate();
  DyadicPiece p;
  p.j = j;
  p.L = L > 0 ? L : (dims.d - 1) / 2 + 1;
  p.params = {dims.d, p.L};
  p.k = dims.k;
  p.validate();
  return p;
}

cplx phi_j(const DyadicPiece& piece, double rho) {
  const double c = piece.cutoff(std::ldexp(rho, -piece.j));
  if (c == 0.0) return 0.0;
  return c * asymptotic_sum(piece.params, rho);
}

double phi_j_hat(const DyadicPiece& piece, double r) {
  const double j = piece.j;
  const Rule rr = dyadic_rho_rule({std::ldexp(1.0, j - 1), std::ldexp(1.0, j), std::ldexp(1.0, j + 1)});
  double s = 0.0;
  for (std::size_t i = 0; i < rr.size(); ++i) {
    const double rho = rr.x[i];
    s += rr.w[i] * phi_j(piece, rho).real() * std::pow(rho, piece.params.d - 1) * sphere_kernel(piece.params.d, r * rho);
  }
  return s;
}

cplx kernel_Kj(const DyadicPiece& piece, double t1, double t2, double rho1, double rho2, const OscOptions& opt) {
  piece.validate();
  const int d = piece.params.d, dy = d - piece.k, dz = piece.k;
  if (dy < 2 || dz < 2) throw DomainError("kernel_Kj: both block dimensions must be at least 2");
  if (t1 < 0 || t2 < 0 || rho1 < 0 || rho2 < 0) throw DomainError("kernel_Kj: arguments must be nonnegative");
  const double s = std::ldexp(1.0, -2 * piece.j);
  const double A = s * (t1 * t1 + t2 * t2 + rho1 * rho1 + rho2 * rho2);
  const double B1 = s * 2.0 * t1 * rho1, B2 = s * 2.0 * t2 * rho2;
  const double lambda = std::ldexp(1.0, piece.j);
  std::vector<cplx> alpha(piece.L);
  for (int l = 0; l < piece.L; ++l) alpha[l] = hankel_alpha(d, l);
  auto g = [&](double psi) {
    const double c = piece.cutoff(psi);
    if (c == 0.0) return cplx(0.0);
    const double z = lambda * psi;
    cplx acc = 0.0;
    for (int l = 0; l < piece.L; ++l) acc += alpha[l] * std::pow(z, 0.5 * (1 - d) - l);
    return c * acc;
  };
  const OscResult r = integrate_radial_amplitude(0.5 * (dy - 3), 0.5 * (dz - 3), A, B1, B2, lambda, {0.5, 2.0}, g,
                                                 {0.5, 1.0, 2.0}, opt);
  return surface_measure(dy - 1) * surface_measure(dz - 1) * 2.0 * r.value.real();
}

double kj_bound(const DyadicPiece& piece, double t1, double t2, double rho1, double rho2) {
  const int d = piece.params.d, dy = d - piece.k, dz = piece.k;
  const double x1 = std::ldexp(rho1 * t1, -piece.j), x2 = std::ldexp(rho2 * t2, -piece.j);
  const double f1 = x1 <= 1.0 ? 1.0 : std::pow(x1, -0.5 * (dy - 1));
  const double f2 = x2 <= 1.0 ? 1.0 : std::pow(x2, -0.5 * (dz - 1));
  return std::pow(2.0, piece.j * 0.5 * (1 - d)) * f1 * f2;
}

cplx kernel_Kj_direct(const DyadicPiece& piece, double t1, double t2, double rho1, double rho2, int n_angle) {
  piece.validate();
  const int dy = piece.params.d - piece.k, dz = piece.k;
  const double rate = std::max(t1 * rho1, t2 * rho2) / std::ldexp(1.0, piece.j - 1);
  const int N = n_angle > 0 ? n_angle : 128 + int(std::ceil(4.0 * rate));
  const SpherePoints S1 = sphere_points(dy, N), S2 = sphere_points(dz, N);
  // squared block distances |t e - rho w|^2
  std::vector<double> q1(S1.x.size()), q2(S2.x.size());
  for (std::size_t a = 0; a < q1.size(); ++a) {
    double s = 0.0;
    for (int c = 0; c < dy; ++c) {
      const double v = (c == 0 ? t1 : 0.0) - rho1 * S1.x[a][c];
      s += v * v;
    }
    q1[a] = s;
  }
  for (std::size_t b = 0; b < q2.size(); ++b) {
    double s = 0.0;
    for (int c = 0; c < dz; ++c) {
      const double v = (c == 0 ? t2 : 0.0) - rho2 * S2.x[b][c];
      s += v * v;
    }
    q2[b] = s;
  }
  cplx acc = 0.0;
  for (std::size_t a = 0; a < q1.size(); ++a) {
    cplx row = 0.0;
    for (std::size_t b = 0; b < q2.size(); ++b) row += S2.w[b] * phi_j(piece, std::sqrt(q1[a] + q2[b]));
    acc += S1.w[a] * row;
  }
  return acc;
}

Grid1D annulus_frequency_grid(double kernel_reach, double out_rmax) {
  const double reach = std::max({kernel_reach, out_rmax, 1.0});
  // panels align with the transitions of tau and stay below 1/16 so tau itself is resolved
  const double width = std::min(1.0 / 16, 0.8 * 16 / reach);
  std::vector<double> br{0.0};
  const double knots[] = {0.5, 0.75, 1.25, 1.5};
  double prev = 0.0;
  for (double k : knots) {
    const int n = std::max(1, int(std::ceil((k - prev) / width)));
    for (int i = 1; i <= n; ++i) br.push_back(prev + (k - prev) * i / n);
    prev = k;
  }
  return make_panel_grid(br, 17);
}

BlockRadialProfile apply_Tj(const BlockRadialProfile& f, const DyadicPiece& piece, const TjOptions& opt) {
  piece.validate();
  if (piece.params.d != f.dims().d || piece.k != f.dims().k)
    throw DomainError("apply_Tj: piece and profile dimensions differ");
  const int d = piece.params.d, j = piece.j;
  const double reach = std::ldexp(1.0, j + 1);
  if (opt.path == TjPath::multiplier) {
    const Rule rr = dyadic_rho_rule({std::ldexp(1.0, j - 1), std::ldexp(1.0, j), reach});
    const RadialTable table =
        radial_transform_table(d, rr, [&](double rho) { return phi_j(piece, rho).real(); }, reach);
    return apply_radial_multiplier(f, table, reach, opt.out1, opt.out2);
  }
  const Grid1D o1 = opt.out1 ? *opt.out1 : f.grid1();
  const Grid1D o2 = opt.out2 ? *opt.out2 : f.grid2();
  const double evals = double(o1.size()) * o2.size() * f.n1() * f.n2();
  if (evals > opt.kernel_budget) {
    std::ostringstream m;
    m << "apply_Tj: kernel path needs " << evals << " kernel evaluations, budget " << opt.kernel_budget;
    throw BudgetExceeded(m.str());
  }
  const SmoothCutoff tau = make_tau();
  const Grid1D fq = annulus_frequency_grid(std::max(f.grid1().rmax(), f.grid2().rmax()), 0.0);
  const BlockRadialProfile g = apply_multiplier(f, [&](double r) { return cplx(tau(r)); }, {fq, fq, {}, {}});
  const auto m1 = g.axis_measure1(), m2 = g.axis_measure2();
  const double c = std::pow(2.0 * M_PI, -0.5 * d) / g.dims().c_dk();  // axis measures carry the sphere areas
  OscOptions kopt;
  kopt.check = false;
  BlockRadialProfile out(f.dims(), o1, o2);
  for (std::size_t a = 0; a < o1.size(); ++a)
    for (std::size_t b = 0; b < o2.size(); ++b) {
      cplx acc = 0.0;
      for (std::size_t i = 0; i < g.n1(); ++i)
        for (std::size_t k = 0; k < g.n2(); ++k) {
          const cplx v = g.at(i, k);
          if (v == 0.0) continue;
          acc += m1[i] * m2[k] * v * kernel_Kj(piece, o1.x[a], o2.x[b], g.grid1().x[i], g.grid2().x[k], kopt);
        }
      out.at(a, b) = c * acc;
    }
  return out;
}

double t0_kernel(const Dimensions& dims, int L, int j_tail, double rho) {
  const RadialCutoffFamily fam = make_partition(std::max(1, j_tail));
  const double J = sphere_kernel(dims.d, rho);
  double v = fam.chi0(rho) * J;
  double w = 0.0;
  for (int j = 1; j <= j_tail; ++j) w += fam.term(j, rho);
  if (w != 0.0) v += w * (J - asymptotic_sum({dims.d, L}, rho).real());
  return v;
}

BlockRadialProfile apply_T0(const BlockRadialProfile& f, const T0Options& opt) {
  const Dimensions& D = f.dims();
  const int L = opt.L > 0 ? opt.L : (D.d - 1) / 2 + 1;
  if (opt.j_tail < 1) throw DomainError("apply_T0: j_tail must be >= 1");
  const double reach = std::ldexp(1.0, opt.j_tail + 1);
  std::vector<double> br{0.0};
  for (int j = 0; j <= opt.j_tail + 1; ++j) br.push_back(std::ldexp(1.0, j));
  const Rule rr = dyadic_rho_rule(br);
  const RadialTable table =
      radial_transform_table(D.d, rr, [&](double rho) { return t0_kernel(D, L, opt.j_tail, rho); }, reach);
  return apply_radial_multiplier(f, table, reach, opt.out1, opt.out2);
}

std::vector<KjPoint> make_kj_sweep(int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.5);
  std::vector<KjPoint> out;
  while (int(out.size()) < count) {
    KjPoint p{U(rng), U(rng), U(rng), U(rng)};
    const double lo2 = (p.t1 - p.rho1) * (p.t1 - p.rho1) + (p.t2 - p.rho2) * (p.t2 - p.rho2);
    const double hi2 = (p.t1 + p.rho1) * (p.t1 + p.rho1) + (p.t2 + p.rho2) * (p.t2 + p.rho2);
    if (lo2 < 4.0 && hi2 > 0.25) out.push_back(p);
  }
  return out;
}

RatioReport check_Kj_bound(const Dimensions& dims, const std::vector<int>& js, const std::vector<KjPoint>& points,
                           int fit_j_max, const OscOptions& opt) {
  RatioReport rep;
  rep.fit_j_max = fit_j_max;
  double fit = 0.0, all = 0.0;
  for (int j : js) {
    const DyadicPiece piece = make_piece(dims, j);
    const double s = std::ldexp(1.0, j);
    for (const auto& p : points) {
      RatioRow row{j, s * p.t1, s * p.t2, s * p.rho1, s * p.rho2, 0, 0, 0};
      row.value = std::abs(kernel_Kj(piece, row.t1, row.t2, row.rho1, row.rho2, opt));
      row.bound = kj_bound(piece, row.t1, row.t2, row.rho1, row.rho2);
      row.ratio = row.value / row.bound;
      if (j <= fit_j_max) fit = std::max(fit, row.ratio);
      all = std::max(all, row.ratio);
      rep.rows.push_back(row);
    }
  }
  rep.c_star = fit > 0.0 ? fit : all;
  rep.exceedance = rep.c_star > 0.0 ? all / rep.c_star : 1.0;
  return rep;
}

double p_stein_tomas(const Dimensions& dims) {
  const double dm = dims.d + dims.m();
  return 2.0 * dm / (dm + 2.0);
}

ScalingReport check_Tj_scaling(const std::vector<BlockRadialProfile>& family, const std::vector<int>& js) {
  ScalingReport rep;
  if (family.empty() || js.empty()) return rep;
  const Dimensions D = family.front().dims();
  const int m = D.m();
  rep.p_st = p_stein_tomas(D);
  rep.p_lorentz = 2.0 * m / (m + 1.0);
  const double p = rep.p_lorentz, pd = conjugate_exponent(p);
  rep.l2_spread = 1.0;
  rep.lorentz_spread = 1.0;
  for (const auto& f : family) {
    const double nst = lebesgue_norm(f, rep.p_st), nl = lorentz_norm(f, strong_lorentz(p));
    std::vector<ScalingRow> rows;
    for (int j : js) {
      const DyadicPiece piece = make_piece(D, j);
      const double R = std::ldexp(1.0, j + 1) + 24.0;
      const Grid1D og = make_panel_grid(R, int(std::ceil(R / 4.0)), 17);
      TjOptions o;
      o.out1 = og;
      o.out2 = og;
      const BlockRadialProfile t = apply_Tj(f, piece, o);
      ScalingRow row{j, 0.0, 0.0};
      if (nst > 0.0) row.l2_ratio = lebesgue_norm(t, 2.0) / (std::pow(2.0, 0.5 * j) * nst);
      if (nl > 0.0)
        row.lorentz_ratio = lorentz_norm(t, weak_lorentz(pd)) / (std::pow(2.0, j * (0.5 * (1 + D.d) - D.d / p)) * nl);
      rows.push_back(row);
    }
    auto spread = [&](double ScalingRow::*field) {
      double lo = INFINITY, hi = 0.0;
      for (const auto& r : rows) {
        lo = std::min(lo, r.*field);
        hi = std::max(hi, r.*field);
      }
      return hi == 0.0 ? 1.0 : hi / lo;
    };
    rep.l2_spread = std::max(rep.l2_spread, spread(&ScalingRow::l2_ratio));
    rep.lorentz_spread = std::max(rep.lorentz_spread, spread(&ScalingRow::lorentz_ratio));
    rep.rows.push_back(std::move(rows));
  }
  rep.uniform = rep.l2_spread < 2.0 && rep.lorentz_spread < 2.0;
  return rep;
}

}  // namespace blockrad
