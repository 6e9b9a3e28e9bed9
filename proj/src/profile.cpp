#include "blockrad/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "blockrad/errors.hpp"
#include "blockrad/quadrature.hpp"
#include "blockrad/specfun.hpp"

namespace blockrad {

double Dimensions::c_dk() const { return surface_measure(dy()) * surface_measure(dz()); }

void Dimensions::validate() const {
  if (d < 2 || k < 1 || k > d - 1) throw DomainError("Dimensions: need d >= 2 and 1 <= k <= d-1");
}

Grid1D make_grid_from_nodes(std::vector<double> nodes, int panel_order) {
  Grid1D g;
  const std::size_t n = nodes.size();
  if (n < 2) throw DomainError("grid: need at least two nodes");
  if (nodes[0] != 0.0) throw DomainError("grid: first node must be 0");
  for (std::size_t i = 1; i < n; ++i)
    if (!(nodes[i] > nodes[i - 1])) throw DomainError("grid: nodes must be strictly increasing");
  g.x = std::move(nodes);
  g.w.assign(n, 0.0);
  g.panel_order = panel_order;
  if (panel_order >= 2) {
    const std::size_t step = panel_order - 1;
    if ((n - 1) % step != 0) throw DomainError("grid: node count incompatible with panel order");
    const Rule& gl = gauss_legendre(panel_order);
    for (std::size_t p = 0; p + 1 < n; p += step) {
      const double a = g.x[p], b = g.x[p + step];
      const Rule q = mapped(gl, a, b);
      for (int i = 0; i < panel_order; ++i) {
        double s = 0.0;
        for (std::size_t t = 0; t < q.size(); ++t) {
          double l = 1.0;
          for (int j = 0; j < panel_order; ++j)
            if (j != i) l *= (q.x[t] - g.x[p + j]) / (g.x[p + i] - g.x[p + j]);
          s += q.w[t] * l;
        }
        g.w[p + i] += s;
      }
    }
  } else {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double h = 0.5 * (g.x[i + 1] - g.x[i]);
      g.w[i] += h;
      g.w[i + 1] += h;
    }
  }
  return g;
}

Grid1D make_panel_grid(const std::vector<double>& breaks, int order) {
  if (breaks.size() < 2 || breaks[0] != 0.0) throw DomainError("panel grid: breakpoints must start at 0");
  if (order < 2) throw DomainError("panel grid: order must be >= 2");
  const Rule& ref = gauss_lobatto(order);
  std::vector<double> nodes{0.0};
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double a = breaks[p], b = breaks[p + 1];
    for (int i = 1; i < order; ++i) nodes.push_back(i + 1 == order ? b : 0.5 * (a + b) + 0.5 * (b - a) * ref.x[i]);
  }
  return make_grid_from_nodes(std::move(nodes), order);
}

Grid1D make_panel_grid(double rmax, int panels, int order) {
  if (!(rmax > 0.0) || panels < 1) throw DomainError("panel grid: need rmax > 0 and panels >= 1");
  std::vector<double> br(panels + 1);
  for (int p = 0; p <= panels; ++p) br[p] = rmax * p / panels;
  br[panels] = rmax;
  return make_panel_grid(br, order);
}

Grid1D default_grid() { return make_panel_grid(40.0, 24, 17); }

BlockRadialProfile::BlockRadialProfile(Dimensions dims, Grid1D g1, Grid1D g2)
    : dims_(dims), g1_(std::move(g1)), g2_(std::move(g2)), v_(g1_.size() * g2_.size(), 0.0) {
  dims_.validate();
}

BlockRadialProfile::BlockRadialProfile(Dimensions dims, Grid1D g1, Grid1D g2,
                                       const std::function<cplx(double, double)>& f)
    : BlockRadialProfile(dims, std::move(g1), std::move(g2)) {
  for (std::size_t i = 0; i < n1(); ++i)
    for (std::size_t j = 0; j < n2(); ++j) at(i, j) = f(g1_.x[i], g2_.x[j]);
}

namespace {
std::vector<double> axis_measure(const Grid1D& g, int l) {
  std::vector<double> m(g.size());
  const double s = surface_measure(l);
  for (std::size_t i = 0; i < g.size(); ++i) m[i] = s * (l == 1 ? 1.0 : std::pow(g.x[i], l - 1)) * g.w[i];
  return m;
}
}  // namespace

std::vector<double> BlockRadialProfile::axis_measure1() const { return axis_measure(g1_, dims_.dy()); }
std::vector<double> BlockRadialProfile::axis_measure2() const { return axis_measure(g2_, dims_.dz()); }

double BlockRadialProfile::measure(std::size_t i, std::size_t j) const {
  const int a = dims_.dy() - 1, b = dims_.dz() - 1;
  return dims_.c_dk() * (a == 0 ? 1.0 : std::pow(g1_.x[i], a)) * (b == 0 ? 1.0 : std::pow(g2_.x[j], b)) *
         g1_.w[i] * g2_.w[j];
}

Stencil interpolation_stencil(const Grid1D& g, double r) {
  Stencil s;
  r = std::abs(r);
  const std::size_t n = g.size();
  if (n == 0 || r > g.rmax()) return s;
  if (g.panel_order >= 2) {
    const std::size_t step = g.panel_order - 1;
    const std::size_t panels = (n - 1) / step;
    // locate panel by the breakpoints x[p*step]
    std::size_t lo = 0, hi = panels;
    while (hi - lo > 1) {
      std::size_t mid = (lo + hi) / 2;
      if (g.x[mid * step] <= r)
        lo = mid;
      else
        hi = mid;
    }
    s.first = lo * step;
    s.c.assign(g.panel_order, 0.0);
    for (int i = 0; i < g.panel_order; ++i)
      if (g.x[s.first + i] == r) {
        s.c[i] = 1.0;
        return s;
      }
    // barycentric form
    double denom = 0.0;
    for (int i = 0; i < g.panel_order; ++i) {
      double wi = 1.0;
      for (int j = 0; j < g.panel_order; ++j)
        if (j != i) wi /= (g.x[s.first + i] - g.x[s.first + j]);
      s.c[i] = wi / (r - g.x[s.first + i]);
      denom += s.c[i];
    }
    for (double& c : s.c) c /= denom;
    return s;
  }
  // cubic Lagrange on the four nearest nodes
  std::size_t i = std::upper_bound(g.x.begin(), g.x.end(), r) - g.x.begin();
  std::size_t first = i >= 2 ? i - 2 : 0;
  std::size_t cnt = std::min<std::size_t>(4, n);
  if (first + cnt > n) first = n - cnt;
  s.first = first;
  s.c.assign(cnt, 1.0);
  for (std::size_t a = 0; a < cnt; ++a)
    for (std::size_t b = 0; b < cnt; ++b)
      if (a != b) s.c[a] *= (r - g.x[first + b]) / (g.x[first + a] - g.x[first + b]);
  return s;
}

cplx BlockRadialProfile::interpolate(double r1, double r2) const {
  const Stencil a = interpolation_stencil(g1_, r1), b = interpolation_stencil(g2_, r2);
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    cplx row = 0.0;
    for (std::size_t j = 0; j < b.c.size(); ++j) row += b.c[j] * at(a.first + i, b.first + j);
    s += a.c[i] * row;
  }
  return s;
}

BlockRadialProfile resample(const BlockRadialProfile& f, const Grid1D& g1, const Grid1D& g2) {
  BlockRadialProfile out(f.dims(), g1, g2);
  std::vector<Stencil> s2(g2.size());
  for (std::size_t j = 0; j < g2.size(); ++j) s2[j] = interpolation_stencil(f.grid2(), g2.x[j]);
  std::vector<cplx> tmp(f.n1() * g2.size());
  for (std::size_t i = 0; i < f.n1(); ++i)
    for (std::size_t j = 0; j < g2.size(); ++j) {
      cplx v = 0.0;
      for (std::size_t b = 0; b < s2[j].c.size(); ++b) v += s2[j].c[b] * f.at(i, s2[j].first + b);
      tmp[i * g2.size() + j] = v;
    }
  for (std::size_t i = 0; i < g1.size(); ++i) {
    const Stencil s1 = interpolation_stencil(f.grid1(), g1.x[i]);
    for (std::size_t j = 0; j < g2.size(); ++j) {
      cplx v = 0.0;
      for (std::size_t a = 0; a < s1.c.size(); ++a) v += s1.c[a] * tmp[(s1.first + a) * g2.size() + j];
      out.at(i, j) = v;
    }
  }
  return out;
}

namespace {
void check_same_shape(const BlockRadialProfile& a, const BlockRadialProfile& b) {
  if (a.n1() != b.n1() || a.n2() != b.n2() || a.dims().d != b.dims().d || a.dims().k != b.dims().k)
    throw DomainError("profile arithmetic: shapes differ");
}
}  // namespace

BlockRadialProfile& BlockRadialProfile::operator+=(const BlockRadialProfile& o) {
  check_same_shape(*this, o);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

BlockRadialProfile& BlockRadialProfile::operator-=(const BlockRadialProfile& o) {
  check_same_shape(*this, o);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

BlockRadialProfile& BlockRadialProfile::operator*=(cplx c) {
  for (auto& v : v_) v *= c;
  return *this;
}

BlockRadialProfile BlockRadialProfile::real_part() const {
  BlockRadialProfile r = *this;
  for (auto& v : r.v_) v = v.real();
  return r;
}

BlockRadialProfile BlockRadialProfile::imag_part() const {
  BlockRadialProfile r = *this;
  for (auto& v : r.v_) v = v.imag();
  return r;
}

bool BlockRadialProfile::finite() const {
  return std::all_of(v_.begin(), v_.end(), [](cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

BlockRadialProfile operator+(BlockRadialProfile a, const BlockRadialProfile& b) { return a += b; }
BlockRadialProfile operator-(BlockRadialProfile a, const BlockRadialProfile& b) { return a -= b; }
BlockRadialProfile operator*(cplx c, BlockRadialProfile a) { return a *= c; }

void LorentzSpec::validate() const {
  if (!(p >= 1.0)) throw DomainError("LorentzSpec: p must be in [1, inf]");
  if (!(r == 1.0 || r == p || std::isinf(r))) throw DomainError("LorentzSpec: r must be 1, p or inf");
}

LorentzSpec lebesgue(double p) { return {p, p}; }
LorentzSpec strong_lorentz(double p) { return {p, 1.0}; }
LorentzSpec weak_lorentz(double p) { return {p, INFINITY}; }

double conjugate_exponent(double p) {
  if (p == 1.0) return INFINITY;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

LorentzSpec dual(const LorentzSpec& s) {
  s.validate();
  const double q = conjugate_exponent(s.p);
  if (s.r == s.p) return {q, q};
  if (s.r == 1.0) return {q, INFINITY};
  return {q, 1.0};
}

double lorentz_from_samples(std::vector<double> values, const std::vector<double>& measures, const LorentzSpec& spec) {
  spec.validate();
  const std::size_t n = values.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  const double p = spec.p, r = spec.r;
  double t = 0.0, acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = std::abs(values[idx[k]]);
    const double mu = measures[idx[k]];
    if (!(mu > 0.0) || a == 0.0) {
      t += std::max(mu, 0.0);
      continue;
    }
    const double t1 = t + mu;
    if (std::isinf(p)) {
      acc = std::max(acc, a);
    } else if (std::isinf(r)) {
      acc = std::max(acc, std::pow(t1, 1.0 / p) * a);
    } else if (r == p) {
      acc += std::pow(a, p) * mu;
    } else {
      acc += std::pow(a, r) * (p / r) * (std::pow(t1, r / p) - std::pow(t, r / p));
    }
    t = t1;
  }
  if (std::isinf(p) || std::isinf(r)) return acc;
  return std::pow(acc, 1.0 / r);
}

double lebesgue_norm(const BlockRadialProfile& f, double p) {
  if (!(p >= 1.0)) throw DomainError("lebesgue_norm: p must be >= 1");
  const auto& v = f.values();
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
  }
  const auto m1 = f.axis_measure1(), m2 = f.axis_measure2();
  double acc = 0.0;
  for (std::size_t i = 0; i < f.n1(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < f.n2(); ++j) {
      const double a = std::abs(f.at(i, j));
      if (a != 0.0) row += m2[j] * (p == 2.0 ? a * a : std::pow(a, p));
    }
    acc += m1[i] * row;
  }
  return std::pow(acc, 1.0 / p);
}

double lorentz_norm(const BlockRadialProfile& f, const LorentzSpec& spec) {
  const auto m1 = f.axis_measure1(), m2 = f.axis_measure2();
  std::vector<double> a(f.values().size()), mu(a.size());
  for (std::size_t i = 0; i < f.n1(); ++i)
    for (std::size_t j = 0; j < f.n2(); ++j) {
      a[i * f.n2() + j] = std::abs(f.at(i, j));
      mu[i * f.n2() + j] = m1[i] * m2[j];
    }
  return lorentz_from_samples(std::move(a), mu, spec);
}

double mixed_norm(const BlockRadialProfile& f, const LorentzSpec& p1, const LorentzSpec& p2, MixedOrder order) {
  const auto m1 = f.axis_measure1(), m2 = f.axis_measure2();
  if (order == MixedOrder::y_outer) {
    std::vector<double> inner(f.n1());
    std::vector<double> a(f.n2());
    for (std::size_t i = 0; i < f.n1(); ++i) {
      for (std::size_t j = 0; j < f.n2(); ++j) a[j] = std::abs(f.at(i, j));
      inner[i] = lorentz_from_samples(a, m2, p2);
    }
    return lorentz_from_samples(std::move(inner), m1, p1);
  }
  std::vector<double> inner(f.n2());
  std::vector<double> a(f.n1());
  for (std::size_t j = 0; j < f.n2(); ++j) {
    for (std::size_t i = 0; i < f.n1(); ++i) a[i] = std::abs(f.at(i, j));
    inner[j] = lorentz_from_samples(a, m1, p1);
  }
  return lorentz_from_samples(std::move(inner), m2, p2);
}

double x_dual_norm(const BlockRadialProfile& f, const LorentzSpec& p1, const LorentzSpec& p2) {
  const LorentzSpec q1 = dual(p1), q2 = dual(p2);
  return mixed_norm(f, q1, q2, MixedOrder::y_outer) + mixed_norm(f, q1, q2, MixedOrder::z_outer);
}

double x_norm_upper(const BlockRadialProfile& f, const LorentzSpec& p1, const LorentzSpec& p2) {
  return std::min(mixed_norm(f, p1, p2, MixedOrder::y_outer), mixed_norm(f, p1, p2, MixedOrder::z_outer));
}

cplx inner_product(const BlockRadialProfile& f, const BlockRadialProfile& g) {
  check_same_shape(f, g);
  const auto m1 = f.axis_measure1(), m2 = f.axis_measure2();
  cplx acc = 0.0;
  for (std::size_t i = 0; i < f.n1(); ++i) {
    cplx row = 0.0;
    for (std::size_t j = 0; j < f.n2(); ++j) row += m2[j] * f.at(i, j) * std::conj(g.at(i, j));
    acc += m1[i] * row;
  }
  return acc;
}

}  // namespace blockrad
