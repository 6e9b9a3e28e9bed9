#include "blockrad/lap.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "blockrad/diagnostics.hpp"
#include "blockrad/errors.hpp"
#include "blockrad/kernels.hpp"
#include "blockrad/quadrature.hpp"
#include "blockrad/specfun.hpp"

namespace blockrad {

namespace {

void check_zero_index(const SymbolModel& s, int m) {
  if (m < 0 || m >= int(s.zeros.size())) throw DomainError("symbol has no zero with this index");
}

// k-th finite difference of q with step h, divided by h^k.
double finite_derivative(const std::function<double(double)>& q, double r, double h, int k) {
  double s = 0.0, binom = 1.0;
  for (int i = 0; i <= k; ++i) {
    s += ((i % 2) ? -1.0 : 1.0) * binom * q(r + (0.5 * k - i) * h);
    binom = binom * (k - i) / (i + 1);
  }
  return s / std::pow(h, k);
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0 ? sxy / sxx : 0.0;
}

// Breakpoints on [lo, hi] doubling away from each focus from min_width, capped at max_width.
std::vector<double> graded_breaks(double lo, double hi, const std::vector<double>& foci, double min_width,
                                  double max_width) {
  std::vector<double> br{lo, hi};
  for (double c : foci) {
    if (c < lo || c > hi) continue;
    br.push_back(c);
    double off = 0.0;
    for (double w = min_width; w < max_width; w *= 2.0) {
      off += w;
      if (c - off > lo) br.push_back(c - off);
      if (c + off < hi) br.push_back(c + off);
    }
  }
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  std::vector<double> out{br.front()};
  for (std::size_t i = 1; i < br.size(); ++i) {
    const double a = out.back(), b = br[i];
    const int n = std::max(1, int(std::ceil((b - a) / max_width)));
    for (int p = 1; p <= n; ++p) out.push_back(p == n ? b : a + (b - a) * p / n);
  }
  return out;
}

Rule rule_on_breaks(const std::vector<double>& br, int n) {
  Rule r;
  const Rule& ref = gauss_legendre(n);
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    const Rule p = mapped(ref, br[i], br[i + 1]);
    r.x.insert(r.x.end(), p.x.begin(), p.x.end());
    r.w.insert(r.w.end(), p.w.begin(), p.w.end());
  }
  return r;
}

struct OutGrids {
  Grid1D g1, g2;
  double reach() const { return std::hypot(g1.rmax(), g2.rmax()); }
};

OutGrids out_grids(const BlockRadialProfile& f, const ResolveOptions& opt) {
  return {opt.out1 ? *opt.out1 : f.grid1(), opt.out2 ? *opt.out2 : f.grid2()};
}

// Frequency grid with the reach of resolved_frequency_grid, panels aligned with the ends of
// the zero cutoffs and narrow enough to resolve their transitions.
Grid1D symbol_frequency_grid(const Grid1D& spatial, double out_rmax, const SymbolModel& symbol) {
  const Grid1D base = resolved_frequency_grid(spatial, out_rmax);
  const double F = base.rmax();
  if (symbol.cutoffs.chi.empty()) return base;
  double width = 0.999 * F / ((base.size() - 1) / (base.panel_order - 1));
  std::vector<double> knots{0.0, F};
  for (const auto& c : symbol.cutoffs.chi) {
    for (double v : {c.support().lo, c.plateau().lo, c.plateau().hi, c.support().hi})
      if (v > 0.0 && v < F) knots.push_back(v);
    width = std::min(width, 0.5 * (c.plateau().lo - c.support().lo));
  }
  std::sort(knots.begin(), knots.end());
  std::vector<double> br{0.0};
  for (std::size_t i = 1; i < knots.size(); ++i) {
    const double a = br.back(), b = knots[i];
    if (!(b > a)) continue;
    const int n = std::max(1, int(std::ceil((b - a) / width)));
    for (int p = 1; p <= n; ++p) br.push_back(p == n ? b : a + (b - a) * p / n);
  }
  return make_panel_grid(br, base.panel_order);
}

// f_hat on frequency grids resolving outputs up to the given radii.
BlockRadialProfile plain_spectrum(const BlockRadialProfile& f, const OutGrids& o) {
  return forward_transform(f, {resolved_frequency_grid(f.grid1(), o.g1.rmax()),
                               resolved_frequency_grid(f.grid2(), o.g2.rmax())});
}

BlockRadialProfile spectrum(const BlockRadialProfile& f, const OutGrids& o, const SymbolModel& symbol) {
  return forward_transform(f, {symbol_frequency_grid(f.grid1(), o.g1.rmax(), symbol),
                               symbol_frequency_grid(f.grid2(), o.g2.rmax(), symbol)});
}

double tail_fraction(const BlockRadialProfile& fh) {
  const double F = std::min(fh.grid1().rmax(), fh.grid2().rmax());
  double tail = 0.0, total = 0.0;
  for (std::size_t i = 0; i < fh.n1(); ++i)
    for (std::size_t j = 0; j < fh.n2(); ++j) {
      const double v = fh.measure(i, j) * std::norm(fh.at(i, j));
      total += v;
      if (std::hypot(fh.grid1().x[i], fh.grid2().x[j]) > 0.8 * F) tail += v;
    }
  return total > 0.0 ? tail / total : 0.0;
}

double frequency_reach(const BlockRadialProfile& fh) { return std::min(fh.grid1().rmax(), fh.grid2().rmax()); }

void require_band_limited(double tail, double tol) {
  if (tail > tol) {
    std::ostringstream m;
    m << "input is not band-limited: spectral mass fraction " << tail << " above 0.8 of the frequency reach";
    throw TruncationError(m.str());
  }
}

double zero_coefficient(const SymbolModel& s, int m, int d) {
  const double r = s.zeros[m];
  return std::pow(r, d - 1) / std::abs(s.dP(r));
}

}  // namespace

ValidationReport validate_symbol(const SymbolModel& symbol, int d, double slope_margin, double r_from) {
  ValidationReport rep;
  auto fail = [&](const std::string& m) {
    rep.valid = false;
    rep.violations.push_back(m);
  };
  if (!std::isfinite(symbol.P(0.0)) || symbol.P(0.0) == 0.0) fail("P(0) must be nonzero");
  for (std::size_t m = 0; m < symbol.zeros.size(); ++m) {
    const double r = symbol.zeros[m];
    const double dp = std::abs(symbol.dP(r));
    rep.zero_slopes.push_back(dp);
    if (std::abs(symbol.P(r)) > 1e-10 * std::max(1.0, dp * r)) fail("P does not vanish at a listed zero");
    if (!(dp > 1e-8)) fail("zero is not simple");
  }
  if (symbol.cutoffs.chi.size() != symbol.zeros.size()) fail("zero cutoffs do not match the zeros");
  for (std::size_t m = 0; m < symbol.cutoffs.chi.size(); ++m) {
    const Interval sup = symbol.cutoffs.chi[m].support();
    if (!(sup.lo > 0.0)) fail("support of a zero cutoff contains 0");
    const double s0 = symbol.dP(symbol.zeros[m]);
    for (int i = 0; i <= 200; ++i) {
      const double v = symbol.dP(sup.lo + sup.width() * i / 200);
      if (!(v * s0 > 0.0)) {
        fail("P' vanishes on the support of a zero cutoff");
        break;
      }
    }
  }
  const int k = d / 2 + 1;
  rep.derivative_order = k;
  const double s = symbol.order;
  const double start = r_from > 0.0 ? r_from : std::max(10.0, symbol.zeros.empty() ? 0.0 : 4.0 * symbol.zeros.back());
  auto q = [&](double r) { return std::pow(r, s) / symbol.P(r); };
  std::vector<double> lx;
  for (double r = start; r <= 1e3; r *= 1.25) lx.push_back(std::log(r));
  for (int o = 1; o <= k; ++o) {
    std::vector<double> x, y;
    for (double l : lx) {
      const double r = std::exp(l);
      const double v = std::abs(finite_derivative(q, r, 0.25 * r, o));
      if (v > 0.0 && std::isfinite(v)) {
        x.push_back(l);
        y.push_back(std::log(v));
      }
    }
    // an exactly constant r^s/P has no decay to measure and satisfies the clause
    const double slope = x.size() < 2 ? -kInf : fit_slope(x, y);
    rep.slopes.push_back(slope);
    if (o == k && !(slope < -k - slope_margin)) {
      std::ostringstream m;
      m << "derivative of order " << k << " of r^s/P decays with slope " << slope << ", need < " << -k - slope_margin;
      fail(m.str());
    }
  }
  return rep;
}

PvRule pv_rule(double r0, Interval window, const SmoothCutoff& eta, double max_width, int order) {
  if (!(window.lo < r0 && r0 < window.hi)) throw DomainError("pv_rule: window must contain r0 in its interior");
  if (!(max_width > 0.0)) throw DomainError("pv_rule: max_width must be positive");
  if (std::abs(eta(0.0) - 1.0) > 1e-14) throw DomainError("pv_rule: eta(0) must be 1");
  const double A = r0 - window.lo, B = window.hi - r0;
  const Interval es = eta.support();
  if (-es.lo > A * (1 + 1e-12) || es.hi > B * (1 + 1e-12)) warn("pv_rule: subtraction bump extends beyond the integration window");
  PvRule rule;
  const Rule& ref = gauss_legendre(order);
  double c0 = 0.0;
  auto add = [&](double a, double b) {
    const int n = std::max(1, int(std::ceil((b - a) / max_width)));
    for (int p = 0; p < n; ++p) {
      const Rule q = mapped(ref, a + (b - a) * p / n, p + 1 == n ? b : a + (b - a) * (p + 1) / n);
      for (std::size_t i = 0; i < q.size(); ++i) {
        const double x = q.x[i] - r0;
        rule.x.push_back(q.x[i]);
        rule.c.push_back(q.w[i] / x);
        c0 -= q.w[i] * eta(x) / x;
      }
    }
  };
  add(window.lo, r0);
  add(r0, window.hi);
  // p.v. of eta(x)/x over the window: only the unpaired part of the longer side survives
  const double lo = std::min(A, B), hi = std::min(std::max(A, B), std::max(-es.lo, es.hi));
  if (hi > lo) {
    const Rule q = composite_gl(lo, hi, std::max(1, int(std::ceil((hi - lo) / max_width))), order);
    double s = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) s += q.w[i] * eta(B > A ? q.x[i] : -q.x[i]) / q.x[i];
    c0 += B > A ? s : -s;
  }
  rule.c0 = c0;
  return rule;
}

double pv_integral(const std::function<double(double)>& g, double r0, Interval window, const SmoothCutoff& eta,
                   double max_width) {
  const PvRule rule = pv_rule(r0, window, eta, max_width);
  double s = rule.c0 * g(r0);
  for (std::size_t i = 0; i < rule.x.size(); ++i) s += rule.c[i] * g(rule.x[i]);
  return s;
}

Interval zero_window(const SymbolModel& symbol, int m) {
  check_zero_index(symbol, m);
  return symbol.cutoffs.chi[m].support();
}

SmoothCutoff zero_eta(const SymbolModel& symbol, int m) {
  check_zero_index(symbol, m);
  const double d = symbol.cutoffs.delta;
  return make_bump({-2.0 * d, 2.0 * d}, {-d, d});
}

cplx plemelj_limit(const SymbolModel& symbol, int m, const std::function<double(double)>& h) {
  check_zero_index(symbol, m);
  const double r0 = symbol.zeros[m];
  const SmoothCutoff& chi = symbol.cutoffs.chi[m];
  const double dp = symbol.dP(r0);
  auto g = [&](double r) {
    if (r == r0) return h(r0) / dp;
    return chi(r) * h(r) * (r - r0) / symbol.P(r);
  };
  const double pv = pv_integral(g, r0, zero_window(symbol, m), zero_eta(symbol, m), symbol.cutoffs.delta / 8);
  return {pv, -M_PI * h(r0) / std::abs(dp)};
}

cplx plemelj_eps(const SymbolModel& symbol, int m, const std::function<double(double)>& h, double eps) {
  check_zero_index(symbol, m);
  if (!(eps > 0.0)) throw DomainError("plemelj_eps: eps must be positive");
  const Interval w = zero_window(symbol, m);
  const double r0 = symbol.zeros[m];
  const double scale = std::abs(symbol.dP(r0));
  const Rule q = rule_on_breaks(graded_breaks(w.lo, w.hi, {r0}, eps / (8 * scale), symbol.cutoffs.delta / 8), 20);
  const SmoothCutoff& chi = symbol.cutoffs.chi[m];
  cplx s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += q.w[i] * chi(q.x[i]) * h(q.x[i]) / cplx(symbol.P(q.x[i]), eps);
  return s;
}

cplx richardson(const std::vector<cplx>& values) {
  if (values.empty()) throw DomainError("richardson: no values");
  std::vector<cplx> t = values;
  for (std::size_t level = 1; level < t.size(); ++level) {
    const double f = std::ldexp(1.0, int(level));
    for (std::size_t i = t.size() - 1; i >= level; --i) t[i] = (f * t[i] - t[i - 1]) / (f - 1.0);
  }
  return t.back();
}

cplx phi_m_kernel(const SymbolModel& symbol, int m, int d, double z, double z_max) {
  check_zero_index(symbol, m);
  if (!(z > 0.0)) throw DomainError("phi_m_kernel: z must be positive");
  if (z > z_max) throw BudgetExceeded("phi_m_kernel: argument beyond the oscillation budget");
  const double r0 = symbol.zeros[m];
  const SmoothCutoff& chi = symbol.cutoffs.chi[m];
  const double dp = symbol.dP(r0);
  auto g = [&](double r) {
    if (r == r0) return std::pow(r0, d - 1) / dp * sphere_kernel(d, r0 * z);
    return chi(r) * std::pow(r, d - 1) * (r - r0) / symbol.P(r) * sphere_kernel(d, r * z);
  };
  const double width = std::min(symbol.cutoffs.delta / 8, 8.0 / z);
  const double pv = pv_integral(g, r0, zero_window(symbol, m), zero_eta(symbol, m), width);
  return {pv, -M_PI * zero_coefficient(symbol, m, d) * sphere_kernel(d, r0 * z)};
}

BlockRadialProfile regular_part(const BlockRadialProfile& f, const SymbolModel& symbol, const MultiplierGrids& grids) {
  const ZeroCutoffs& zc = symbol.cutoffs;
  const auto P = symbol.P;
  MultiplierGrids g = grids;
  if (!g.freq1) g.freq1 = symbol_frequency_grid(f.grid1(), (g.out1 ? *g.out1 : f.grid1()).rmax(), symbol);
  if (!g.freq2) g.freq2 = symbol_frequency_grid(f.grid2(), (g.out2 ? *g.out2 : f.grid2()).rmax(), symbol);
  return apply_multiplier(
      f,
      [&zc, P](double r) {
        const double c = zc.complement(r);
        return c == 0.0 ? cplx(0.0) : cplx(c / P(r));
      },
      g);
}

double band_tail(const BlockRadialProfile& f) { return tail_fraction(plain_spectrum(f, {f.grid1(), f.grid2()})); }

ResolventField resolve(const BlockRadialProfile& f, const SymbolModel& symbol, const ResolveOptions& opt) {
  const int d = f.dims().d;
  const ValidationReport vr = validate_symbol(symbol, d);
  if (!vr.valid) throw ValidationError("resolve: " + vr.violations.front());
  const OutGrids o = out_grids(f, opt);
  const BlockRadialProfile fh = spectrum(f, o, symbol);
  ResolventField out;
  out.band_tail = tail_fraction(fh);
  require_band_limited(out.band_tail, opt.band_tolerance);
  const double reach = frequency_reach(fh);
  for (std::size_t m = 0; m < symbol.zeros.size(); ++m)
    if (zero_window(symbol, int(m)).hi > 0.8 * reach)
      throw TruncationError("resolve: a zero window lies beyond the resolved frequency band");

  const ZeroCutoffs& zc = symbol.cutoffs;
  out.regular = apply_multiplier_hat(
      fh,
      [&](double r) {
        const double c = zc.complement(r);
        return c == 0.0 ? cplx(0.0) : cplx(c / symbol.P(r));
      },
      {o.g1, o.g2});
  out.profile = out.regular;

  const double max_width = std::min(zc.delta / 2, 8.0 / std::max(o.reach(), 1.0));
  for (std::size_t m = 0; m < symbol.zeros.size(); ++m) {
    const double r0 = symbol.zeros[m];
    const BlockRadialProfile E0 = extend_at_radius(f, r0, {o.g1, o.g2});
    out.delta.push_back(cplx(0.0, -M_PI * zero_coefficient(symbol, int(m), d)) * E0);

    // p.v. part: g(r) = chi_m r^{d-1} (r - r0) / P(r) E(r), with g(r0) = r0^{d-1} / P'(r0) E(r0)
    const PvRule rule = pv_rule(r0, zero_window(symbol, int(m)), zero_eta(symbol, int(m)), max_width);
    BlockRadialProfile pv = cplx(rule.c0 * std::pow(r0, d - 1) / symbol.dP(r0)) * E0;
    int used = 0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const double r = rule.x[i];
      const double c = zc.chi[m](r);
      if (c == 0.0) continue;
      const double coef = rule.c[i] * c * std::pow(r, d - 1) * (r - r0) / symbol.P(r);
      pv += cplx(coef) * extend_at_radius(f, r, {o.g1, o.g2});
      ++used;
    }
    out.pv_nodes.push_back(used);
    out.profile += out.delta.back();
    out.profile += pv;
    out.pv.push_back(std::move(pv));
  }
  return out;
}

BlockRadialProfile eps_resolvent(const BlockRadialProfile& f, const SymbolModel& symbol, double eps,
                                 const ResolveOptions& opt) {
  if (!(eps > 0.0)) throw DomainError("eps_resolvent: eps must be positive");
  const int d = f.dims().d;
  const OutGrids o = out_grids(f, opt);
  const BlockRadialProfile fh = plain_spectrum(f, o);
  require_band_limited(tail_fraction(fh), opt.band_tolerance);
  const double r_cut = 0.8 * frequency_reach(fh);
  double min_width = r_cut;
  for (double r : symbol.zeros) min_width = std::min(min_width, eps / (8 * std::abs(symbol.dP(r))));
  const double max_width = std::min(0.25, 8.0 / std::max(o.reach(), 1.0));
  const Rule q = rule_on_breaks(graded_breaks(0.0, r_cut, symbol.zeros, min_width, max_width), 16);
  BlockRadialProfile u(f.dims(), o.g1, o.g2);
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double r = q.x[i];
    const cplx c = q.w[i] * std::pow(r, d - 1) / cplx(symbol.P(r), eps);
    u += c * extend_at_radius(f, r, {o.g1, o.g2});
  }
  return u;
}

double ball_norm(const BlockRadialProfile& f, double radius) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.n1(); ++i)
    for (std::size_t k = 0; k < f.n2(); ++k)
      if (std::hypot(f.grid1().x[i], f.grid2().x[k]) <= radius) s += f.measure(i, k) * std::norm(f.at(i, k));
  return std::sqrt(s);
}

ResidualReport resolvent_residual(const BlockRadialProfile& f, const SymbolModel& symbol, const BlockRadialProfile& u) {
  if (!(u.grid1() == f.grid1() && u.grid2() == f.grid2()))
    throw DomainError("resolvent_residual: u and f must share grids");
  const double R = std::min(u.grid1().rmax(), u.grid2().rmax());
  ResidualReport rep{0.0, 0.375 * R, 0.625 * R, 0.95 * R};
  const SmoothCutoff taper = make_bump({-kInf, rep.taper_end}, {-kInf, rep.taper_start});
  BlockRadialProfile v = u;
  for (std::size_t i = 0; i < v.n1(); ++i)
    for (std::size_t k = 0; k < v.n2(); ++k) v.at(i, k) *= taper(std::hypot(v.grid1().x[i], v.grid2().x[k]));
  const BlockRadialProfile res = apply_symbol(v, symbol) - f;
  const double nf = ball_norm(f, rep.ball_radius);
  rep.relative = nf > 0.0 ? ball_norm(res, rep.ball_radius) / nf : ball_norm(res, rep.ball_radius);
  return rep;
}

SlopeReport check_phim_asymptotics(const SymbolModel& symbol, int m, int d, double z_lo, double z_hi) {
  check_zero_index(symbol, m);
  if (!(0.0 < z_lo && z_lo < z_hi)) throw DomainError("check_phim_asymptotics: bad z range");
  const double rm = symbol.zeros[m];
  const double period = 2.0 * M_PI / rm;
  const double step = period / 32;
  SlopeReport rep;
  rep.expected_leading = 0.5 * (1 - d);
  std::vector<cplx> phi;
  for (double z = z_lo; z <= z_hi; z += step) {
    rep.z.push_back(z);
    phi.push_back(phi_m_kernel(symbol, m, d, z));
    rep.abs_phi.push_back(std::abs(phi.back()));
  }
  const std::size_t n = rep.z.size();
  // envelope: maximum over each full period
  auto envelope_slope = [&](const std::vector<double>& a) {
    std::vector<double> x, y;
    const std::size_t per = 32;
    for (std::size_t s = 0; s + per <= n; s += per) {
      double mx = 0.0, zc = 0.0;
      for (std::size_t i = s; i < s + per; ++i)
        if (a[i] > mx) {
          mx = a[i];
          zc = rep.z[i];
        }
      if (mx > 0.0) {
        x.push_back(std::log(zc));
        y.push_back(std::log(mx));
      }
    }
    return fit_slope(x, y);
  };
  rep.leading_slope = envelope_slope(rep.abs_phi);

  // least squares for z^{(1-d)/2} (a e^{i rm z} + b e^{-i rm z}) plus the next order
  Eigen::MatrixXcd M(n, 4);
  Eigen::VectorXcd rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = rep.z[i];
    const double p = std::pow(z, rep.expected_leading);
    const cplx e = std::exp(cplx(0.0, rm * z));
    M(i, 0) = p * e;
    M(i, 1) = p / e;
    M(i, 2) = p / z * e;
    M(i, 3) = p / z / e;
    rhs(i) = phi[i];
  }
  const Eigen::VectorXcd coef = M.colPivHouseholderQr().solve(rhs);
  std::vector<double> res(n);
  for (std::size_t i = 0; i < n; ++i) res[i] = std::abs(phi[i] - M(i, 0) * coef(0) - M(i, 1) * coef(1));
  rep.residual_slope = envelope_slope(res);

  // zero crossings of Im Phi^m, linearly interpolated
  std::vector<double> zc;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = phi[i].imag(), b = phi[i + 1].imag();
    if (a == 0.0) zc.push_back(rep.z[i]);
    else if (a * b < 0.0) zc.push_back(rep.z[i] + (rep.z[i + 1] - rep.z[i]) * a / (a - b));
  }
  if (zc.size() >= 2) rep.frequency = M_PI * (zc.size() - 1) / (zc.back() - zc.front());
  return rep;
}

}  // namespace blockrad
