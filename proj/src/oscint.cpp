#include "blockrad/oscint.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "blockrad/errors.hpp"
#include "blockrad/quadrature.hpp"

namespace blockrad {

using cplx = std::complex<double>;

namespace {

// Discretization level: 0 = standard, 1 = refined (used for the doubling check).
struct Level {
  int inner_nodes;
  int inner_grade_nodes;
  int outer_nodes;
  int grade_nodes;
  int grade_levels;  // toward corner kinks
  int soft_levels;   // toward cutoff breakpoints
  double phase_per_panel;
  double max_width;
};

Level g_levels[2] = {{12, 8, 16, 8, 20, 8, 6.0, 1.0 / 8}, {18, 12, 24, 12, 28, 12, 3.0, 1.0 / 16}};

Level level(int l) { return g_levels[l == 0 ? 0 : 1]; }

inline double fast_pow(double x, double e) {
  if (e == 0.0) return 1.0;
  if (e == -0.5) return 1.0 / std::sqrt(x);
  if (e == 0.5) return std::sqrt(x);
  if (e == 1.0) return x;
  if (e == 1.5) return x * std::sqrt(x);
  return std::pow(x, e);
}

struct Acc {
  cplx v{0.0, 0.0};
  double a = 0.0;
};

// Integrates e^{i lambda psi} f(psi) over [lo, hi]. Each break carries the number of
// geometric grading levels used on the panels touching it (0 = plain breakpoint).
using Break = std::pair<double, int>;

template <class F>
Acc integrate_psi(double lambda, double lo, double hi, std::vector<Break> breaks, const F& f, const Level& lv) {
  Acc acc;
  if (!(hi > lo)) return acc;
  breaks.push_back({lo, 0});
  breaks.push_back({hi, 0});
  std::sort(breaks.begin(), breaks.end());
  std::vector<Break> pts;
  for (auto& b : breaks) {
    if (b.first < lo || b.first > hi) continue;
    if (!pts.empty() && std::abs(b.first - pts.back().first) <= 1e-14 * std::max(1.0, std::abs(b.first))) {
      pts.back().second = std::max(pts.back().second, b.second);
      continue;
    }
    pts.push_back(b);
  }
  const Rule& gl = gauss_legendre(lv.outer_nodes);
  const Rule& gg = gauss_legendre(lv.grade_nodes);
  auto add_panel = [&](double a, double b, const Rule& r) {
    const double h = 0.5 * (b - a), c = 0.5 * (a + b);
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double x = c + h * r.x[i];
      const auto [val, absval] = f(x);
      if (absval == 0.0) continue;
      const double w = h * r.w[i];
      acc.v += w * val * std::polar(1.0, lambda * x);
      acc.a += w * absval;
    }
  };
  // [a, b] graded toward a (toward_left) or b with n levels; the innermost piece is left whole
  auto graded = [&](double a, double b, bool toward_left, int n) {
    const double w = b - a;
    for (int k = 0; k < n; ++k) {
      const double f0 = std::ldexp(1.0, -k - 1), f1 = std::ldexp(1.0, -k);
      if (toward_left)
        add_panel(a + w * f0, a + w * f1, gg);
      else
        add_panel(b - w * f1, b - w * f0, gg);
    }
    const double tiny = w * std::ldexp(1.0, -n);
    if (toward_left)
      add_panel(a, a + tiny, gg);
    else
      add_panel(b - tiny, b, gg);
  };
  for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
    const double a = pts[s].first, b = pts[s + 1].first;
    const double len = b - a;
    int np = int(std::ceil(std::abs(lambda) * len / lv.phase_per_panel));
    np = std::max({np, int(std::ceil(len / lv.max_width)), 1});
    const double h = len / np;
    for (int p = 0; p < np; ++p) {
      const double pa = a + p * h, pb = (p + 1 == np) ? b : a + (p + 1) * h;
      const int left = p == 0 ? pts[s].second : 0;
      const int right = p + 1 == np ? pts[s + 1].second : 0;
      if (left == 0 && right == 0) {
        add_panel(pa, pb, gl);
      } else if (right == 0) {
        graded(pa, pb, true, left);
      } else if (left == 0) {
        graded(pa, pb, false, right);
      } else {
        const double mid = 0.5 * (pa + pb);
        graded(pa, mid, true, left);
        graded(mid, pb, false, right);
      }
    }
  }
  return acc;
}

// Weighted line integral over {B1 s1 + B2 s2 = u} inside the square, parametrized by the
// coordinate with the smaller |B|. Returns (int w1 w2 G, int w1 w2 |G|) per unit u.
class LineDensity {
 public:
  LineDensity(double a1, double a2, double B1, double B2, const Level& lv) : lv_(lv) {
    swap_ = std::abs(B1) > std::abs(B2);
    aa_ = swap_ ? a2 : a1;
    ab_ = swap_ ? a1 : a2;
    Ba_ = swap_ ? B2 : B1;
    Bb_ = swap_ ? B1 : B2;
    c_ = std::abs(Ba_ / Bb_);
  }

  // g == nullptr means G = 1 on the line
  template <class G>
  Acc operator()(double u, const G* g) const {
    Acc acc;
    const double pp = (u - Bb_) / Ba_;  // s_b = +1
    const double pm = (u + Bb_) / Ba_;  // s_b = -1
    struct Sing {
      double q;
      double e;
      double scale;
    };
    const Sing sing[4] = {{-1.0, aa_, 1.0}, {1.0, aa_, 1.0}, {pp, ab_, c_}, {pm, ab_, c_}};
    int ilo = 0, ihi = 1;
    double lo = -1.0, hi = 1.0;
    if (std::min(pp, pm) > lo) {
      lo = std::min(pp, pm);
      ilo = pp < pm ? 2 : 3;
    }
    if (std::max(pp, pm) < hi) {
      hi = std::max(pp, pm);
      ihi = pp < pm ? 3 : 2;
    }
    const double L = hi - lo;
    if (!(L > 0.0)) return acc;
    // distance to the nearest other singular point beyond each end
    double eps_lo = INFINITY, eps_hi = INFINITY;
    int side[4];
    for (int i = 0; i < 4; ++i) {
      if (i == ilo) {
        side[i] = -1;
      } else if (i == ihi) {
        side[i] = 1;
      } else if (sing[i].q <= lo) {
        side[i] = -2;
        eps_lo = std::min(eps_lo, lo - sing[i].q);
      } else {
        side[i] = 2;
        eps_hi = std::min(eps_hi, sing[i].q - hi);
      }
    }
    auto eval = [&](double tau, double tau_hi, double w, bool cap_lo, bool cap_hi) {
      // tau = distance from lo, tau_hi = distance from hi; the factors sharing an exponent
      // are multiplied first so each exponent costs one power
      double prod[2] = {1.0, 1.0};
      for (int i = 0; i < 4; ++i) {
        const Sing& S = sing[i];
        if (S.e == 0.0) continue;
        double dist;
        if ((side[i] == -1 && cap_lo) || (side[i] == 1 && cap_hi)) {
          dist = 1.0;
        } else {
          switch (side[i]) {
            case -1: dist = tau; break;
            case 1: dist = tau_hi; break;
            case -2: dist = (lo - S.q) + tau; break;
            default: dist = (S.q - hi) + tau_hi; break;
          }
        }
        prod[i / 2] *= S.scale * dist;
      }
      const double weight = w * fast_pow(prod[0], aa_) * fast_pow(prod[1], ab_);
      if (!g) {
        acc.v += weight;
        acc.a += weight;
        return;
      }
      const double sa = tau <= tau_hi ? lo + tau : hi - tau_hi;
      const double sb = (u - Ba_ * sa) / Bb_;
      const cplx val = swap_ ? (*g)(sb, sa) : (*g)(sa, sb);
      acc.v += weight * val;
      acc.a += weight * std::abs(val);
    };
    const double e_lo = sing[ilo].e, e_hi = sing[ihi].e;
    const int n = lv_.inner_nodes;
    if (eps_lo >= L && eps_hi >= L) {
      const Rule& r = gauss_jacobi(n, e_hi, e_lo);
      const double f = std::pow(0.5 * L, 1.0 + e_lo + e_hi);
      for (std::size_t i = 0; i < r.size(); ++i)
        eval(0.5 * L * (1.0 + r.x[i]), 0.5 * L * (1.0 - r.x[i]), f * r.w[i], true, true);
    } else {
      const double half = 0.5 * L;
      const Rule& gl = gauss_legendre(lv_.inner_grade_nodes);
      for (int end = 0; end < 2; ++end) {
        const double eps = std::max(std::min(end == 0 ? eps_lo : eps_hi, half), 1e-15 * L);
        const double e = end == 0 ? e_lo : e_hi;
        // end panel [0, eps] measured from this end
        {
          const Rule& r = end == 0 ? gauss_jacobi(n, 0.0, e) : gauss_jacobi(n, e, 0.0);
          const double f = std::pow(0.5 * eps, 1.0 + e);
          for (std::size_t i = 0; i < r.size(); ++i) {
            const double d = end == 0 ? 0.5 * eps * (1.0 + r.x[i]) : 0.5 * eps * (1.0 - r.x[i]);
            if (end == 0)
              eval(d, L - d, f * r.w[i], true, false);
            else
              eval(L - d, d, f * r.w[i], false, true);
          }
        }
        double a = eps;
        while (a < half) {
          const double b = std::min(2.0 * a, half);
          const double h = 0.5 * (b - a), c = 0.5 * (a + b);
          for (std::size_t i = 0; i < gl.size(); ++i) {
            const double d = c + h * gl.x[i];
            if (end == 0)
              eval(d, L - d, h * gl.w[i], false, false);
            else
              eval(L - d, d, h * gl.w[i], false, false);
          }
          a = b;
        }
      }
    }
    acc.v /= std::abs(Bb_);
    acc.a /= std::abs(Bb_);
    return acc;
  }

  // u-values where the line passes through a corner of the square
  std::vector<double> kinks() const {
    const double S = std::abs(Ba_) + std::abs(Bb_), D = std::abs(Bb_) - std::abs(Ba_);
    return {-S, -D, D, S};
  }

 private:
  Level lv_;
  bool swap_ = false;
  double aa_ = 0, ab_ = 0, Ba_ = 0, Bb_ = 0, c_ = 1;
};

using InnerAmplitude = std::function<cplx(double, double)>;

// Integrand factored as outer(Psi) * inner(s1, s2); inner may be empty (= 1).
template <class Outer>
Acc integrate_level(double a1, double a2, double A, double B1, double B2, double lambda, Interval sup,
                    const Outer& outer, const InnerAmplitude* inner, const std::vector<Break>& extra, int l) {
  const Level lv = level(l);
  LineDensity line(a1, a2, B1, B2, lv);
  const double S = std::abs(B1) + std::abs(B2);
  const double lo = std::max(sup.lo, std::sqrt(std::max(0.0, A - S)));
  const double hi = std::min(sup.hi, std::sqrt(A + S));
  std::vector<Break> breaks;
  for (double uk : line.kinks())
    if (A - uk >= 0.0) breaks.push_back({std::sqrt(A - uk), lv.grade_levels});
  for (const auto& e : extra) breaks.push_back({e.first, e.second < 0 ? lv.soft_levels : e.second});
  auto f = [&](double psi) {
    const cplx o = outer(psi);
    if (o == 0.0) return std::pair<cplx, double>(0.0, 0.0);
    const double u = A - psi * psi;
    Acc d = line(u, inner);
    return std::pair<cplx, double>(2.0 * psi * o * d.v, 2.0 * psi * std::abs(o) * d.a);
  };
  return integrate_psi(lambda, lo, hi, breaks, f, lv);
}

template <class Outer>
OscResult integrate_checked(double a1, double a2, double A, double B1, double B2, double lambda, Interval sup,
                            const Outer& outer, const InnerAmplitude* inner, const std::vector<Break>& extra,
                            const OscOptions& opt) {
  if (std::abs(lambda) > opt.lambda_max) {
    std::ostringstream m;
    m << "oscillatory integral: |lambda| = " << std::abs(lambda) << " exceeds the budget " << opt.lambda_max;
    throw BudgetExceeded(m.str());
  }
  OscResult out;
  const double S = std::abs(B1) + std::abs(B2);
  if (A - S > sup.hi * sup.hi || A + S < sup.lo * sup.lo) return out;  // Psi never meets the support
  const Acc fine = integrate_level(a1, a2, A, B1, B2, lambda, sup, outer, inner, extra, opt.check ? 1 : 0);
  out.value = fine.v;
  out.abs_scale = fine.a;
  if (!opt.check) return out;
  const Acc coarse = integrate_level(a1, a2, A, B1, B2, lambda, sup, outer, inner, extra, 0);
  const double diff = std::abs(coarse.v - fine.v);
  const double floor = opt.absolute_floor * fine.a;
  out.rel_change = std::abs(fine.v) > 0.0 ? diff / std::abs(fine.v) : (diff > 0.0 ? INFINITY : 0.0);
  if (diff > opt.doubling_tol * std::abs(fine.v) + floor) {
    std::ostringstream m;
    m << "oscillatory integral: refinement changed the value by " << out.rel_change << " (relative)";
    throw ConvergenceError(m.str());
  }
  return out;
}

}  // namespace

void OscIntegralSpec::validate() const {
  if (!(alpha1 > -1.0) || !(alpha2 > -1.0)) throw DomainError("oscillatory integral: alpha must exceed -1");
  if (B1 == 0.0 || B2 == 0.0 || A == 0.0) throw DomainError("oscillatory integral: A, B1, B2 must be nonzero");
  if (std::abs(B1) + std::abs(B2) > A * (1.0 + 1e-12)) throw DomainError("oscillatory integral: need |B1|+|B2| <= A");
  if (!(std::abs(lambda) >= 1.0)) throw DomainError("oscillatory integral: need |lambda| >= 1");
  if (cutoff.support().lo < 0.5 - 1e-12 || cutoff.support().hi > 2.0 + 1e-12)
    throw DomainError("oscillatory integral: cutoff support must lie in [1/2, 2]");
}

double osc_phase(const OscIntegralSpec& s, double s1, double s2) {
  return std::sqrt(std::max(0.0, s.A - s.B1 * s1 - s.B2 * s2));
}

OscResult integrate_on_phase_lines(double alpha1, double alpha2, double A, double B1, double B2, double lambda,
                                   Interval sup, const PhaseAmplitude& G, const OscOptions& opt) {
  // Psi is constant on each line; pass it to G through the outer coordinate.
  double current_psi = 0.0;
  auto outer = [&](double psi) {
    current_psi = psi;
    return cplx(1.0);
  };
  const InnerAmplitude inner = [&](double s1, double s2) { return G(s1, s2, current_psi); };
  return integrate_checked(alpha1, alpha2, A, B1, B2, lambda, sup, outer, &inner, {{sup.lo, -1}, {sup.hi, -1}}, opt);
}

double jacobi_mass(double a) { return std::sqrt(M_PI) * std::exp(std::lgamma(a + 1.0) - std::lgamma(a + 1.5)); }

OscResult integrate_radial_amplitude(double a1, double a2, double A, double B1, double B2, double lambda,
                                     Interval sup, const std::function<cplx(double)>& g,
                                     const std::vector<double>& soft_breaks, const OscOptions& opt) {
  if (!(a1 > -1.0) || !(a2 > -1.0)) throw DomainError("oscillatory integral: alpha must exceed -1");
  if (std::abs(B1) + std::abs(B2) > A * (1.0 + 1e-12) + 1e-300)
    throw DomainError("oscillatory integral: need |B1|+|B2| <= A");
  if (B1 != 0.0 && B2 != 0.0) {
    std::vector<Break> extra;
    for (double b : soft_breaks) extra.push_back({b, -1});
    return integrate_checked(a1, a2, A, B1, B2, lambda, sup, g, nullptr, extra, opt);
  }
  if (std::abs(lambda) > opt.lambda_max) throw BudgetExceeded("oscillatory integral: |lambda| exceeds the budget");
  OscResult out;
  if (B1 == 0.0 && B2 == 0.0) {
    const double psi = std::sqrt(std::max(A, 0.0));
    const cplx v = sup.contains(psi) ? g(psi) : cplx(0.0);
    out.value = jacobi_mass(a1) * jacobi_mass(a2) * v * std::polar(1.0, lambda * psi);
    out.abs_scale = std::abs(out.value);
    return out;
  }
  // one direction drops out: Beta mass times a single Gauss-Jacobi integral in s
  const double a_free = B1 == 0.0 ? a1 : a2, a_live = B1 == 0.0 ? a2 : a1, B = B1 == 0.0 ? B2 : B1;
  // |dPsi/ds| = |B| / (2 Psi) <= |B| on the support (Psi >= 1/2 there)
  auto run = [&](int panels, int n) {
    const Rule r = composite_jacobi(a_live, a_live, panels, n);
    Acc acc;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double psi = std::sqrt(std::max(0.0, A - B * r.x[i]));
      if (!sup.contains(psi)) continue;
      const cplx v = g(psi);
      acc.v += r.w[i] * v * std::polar(1.0, lambda * psi);
      acc.a += r.w[i] * std::abs(v);
    }
    acc.v *= jacobi_mass(a_free);
    acc.a *= jacobi_mass(a_free);
    return acc;
  };
  const double phase = std::abs(lambda * B) * std::max(1.0, 1.0 / std::max(sup.lo, 1e-3));
  const int base = 8 + int(std::ceil(phase / 2.0));
  const Acc fine = run(2 * base, 24);
  out.value = fine.v;
  out.abs_scale = fine.a;
  if (!opt.check) return out;
  const Acc coarse = run(base, 20);
  const double diff = std::abs(coarse.v - fine.v);
  out.rel_change = std::abs(fine.v) > 0.0 ? diff / std::abs(fine.v) : 0.0;
  if (diff > opt.doubling_tol * std::abs(fine.v) + opt.absolute_floor * fine.a)
    throw ConvergenceError("oscillatory integral: refinement changed the value beyond tolerance");
  return out;
}

OscResult eval_osc_integral_checked(const OscIntegralSpec& spec, const OscOptions& opt) {
  spec.validate();
  const SmoothCutoff& chi = spec.cutoff;
  auto outer = [&](double psi) { return cplx(chi(psi)); };
  const InnerAmplitude* inner = spec.amplitude ? &spec.amplitude : nullptr;
  const Interval sup{std::max(0.5, chi.support().lo), std::min(2.0, chi.support().hi)};
  // the cutoff is flat to all orders at its support ends and plateau ends
  const std::vector<Break> extra{
      {sup.lo, -1}, {sup.hi, -1}, {chi.plateau().lo, -1}, {chi.plateau().hi, -1}};
  return integrate_checked(spec.alpha1, spec.alpha2, spec.A, spec.B1, spec.B2, spec.lambda, sup, outer, inner, extra,
                           opt);
}

cplx eval_osc_integral(const OscIntegralSpec& spec, const OscOptions& opt) {
  return eval_osc_integral_checked(spec, opt).value;
}

double envelope(const OscIntegralSpec& s) {
  const double x1 = std::abs(s.lambda * s.B1), x2 = std::abs(s.lambda * s.B2);
  const double f1 = x1 <= 1.0 ? 1.0 : std::pow(x1, -1.0 - s.alpha1);
  const double f2 = x2 <= 1.0 ? 1.0 : std::pow(x2, -1.0 - s.alpha2);
  return f1 * f2;
}

EnvelopeReport check_envelope(const std::vector<OscIntegralSpec>& sweep, double calibration_lambda,
                              const OscOptions& opt) {
  EnvelopeReport rep;
  rep.calibration_lambda = calibration_lambda;
  if (sweep.empty()) throw DomainError("check_envelope: empty sweep");
  double cal = 0.0, all = 0.0;
  bool have_cal = false;
  for (const auto& s : sweep) {
    EnvelopeRow row{s.alpha1, s.alpha2, s.A, s.B1, s.B2, s.lambda, 0, 0, 0};
    row.abs_I = std::abs(eval_osc_integral(s, opt));
    row.envelope = envelope(s);
    row.ratio = row.abs_I / row.envelope;
    if (std::abs(s.lambda) <= calibration_lambda) {
      cal = std::max(cal, row.ratio);
      have_cal = true;
    }
    all = std::max(all, row.ratio);
    rep.rows.push_back(row);
  }
  rep.c_star = have_cal ? cal : all;
  rep.exceedance = rep.c_star > 0.0 ? all / rep.c_star : (all > 0.0 ? INFINITY : 1.0);
  return rep;
}

std::vector<OscIntegralSpec> make_envelope_sweep(double alpha1, double alpha2) {
  // (A, B1, B2): small and large |B|, mixed signs, corners inside and outside the support.
  static const double triples[][3] = {
      {1.0, 0.5, 0.25},    {1.0, -0.3, 0.6},    {2.0, 1.0, 1.0},     {2.5, 0.05, 0.1},   {1.5, 0.01, -0.02},
      {4.0, 2.0, 1.5},     {3.0, -1.0, 2.0},    {6.0, 3.0, 2.5},     {9.0, 4.0, 4.0},    {13.0, 6.0, -6.0},
      {20.0, 10.0, 8.0},   {25.0, -12.0, 12.0}, {30.0, 20.0, 9.5},   {8.0, 7.0, 0.5},    {5.0, 0.3, 4.5},
      {12.0, 5.0, 5.0},    {3.5, 1.75, -1.75},  {16.0, 8.0, 7.0},    {0.5, 0.2, 0.2},    {40.0, 19.0, 19.0}};
  std::vector<OscIntegralSpec> out;
  for (const auto& t : triples)
    for (int e = 0; e <= 10; ++e) {
      OscIntegralSpec s;
      s.alpha1 = alpha1;
      s.alpha2 = alpha2;
      s.A = t[0];
      s.B1 = t[1];
      s.B2 = t[2];
      s.lambda = std::ldexp(1.0, e);
      out.push_back(s);
    }
  return out;
}

std::pair<cplx, double> inner_1d_bound_check(const OscIntegralSpec& spec, double s1) {
  spec.validate();
  if (s1 < -1.0 || s1 > 1.0) throw DomainError("inner_1d_bound_check: s1 outside [-1, 1]");
  const double a2 = spec.alpha2, B2 = spec.B2, C = spec.A - spec.B1 * s1;
  const double zeta2 = a2 > 0.0 ? std::min(1.0, std::pow(std::abs(B2), -a2 - 1.0))
                                : std::min(1.0, std::pow(std::abs(spec.lambda * B2), -a2 - 1.0));
  const SmoothCutoff& chi = spec.cutoff;
  // s2 = (C - psi^2) / B2, ds2 = 2 psi dpsi / |B2|
  const double lo = std::max(chi.support().lo, std::sqrt(std::max(0.0, C - std::abs(B2))));
  const double hi = std::min(chi.support().hi, std::sqrt(std::max(0.0, C + std::abs(B2))));
  const Level lv = level(1);
  std::vector<Break> breaks{{chi.plateau().lo, lv.soft_levels}, {chi.plateau().hi, lv.soft_levels},
                            {lo, lv.soft_levels}, {hi, lv.soft_levels}};
  for (double e : {-1.0, 1.0})
    if (C - e * B2 >= 0.0) breaks.push_back({std::sqrt(C - e * B2), lv.grade_levels});
  auto f = [&](double psi) {
    const double s2 = (C - psi * psi) / B2;
    const double w = std::pow(std::max(0.0, (1.0 - s2) * (1.0 + s2)), a2);
    const cplx m = spec.amplitude ? spec.amplitude(s1, s2) : cplx(1.0);
    const cplx v = chi(psi) * w * m * 2.0 * psi / std::abs(B2);
    return std::pair<cplx, double>(v, std::abs(v));
  };
  Acc acc;
  if (hi > lo) acc = integrate_psi(spec.lambda, lo, hi, breaks, f, lv);
  return {acc.v, zeta2};
}

std::pair<double, double> indicator_integral(double alpha1, double alpha2, double A, double B1, double B2) {
  OscIntegralSpec probe;
  probe.alpha1 = alpha1;
  probe.alpha2 = alpha2;
  probe.A = A;
  probe.B1 = B1;
  probe.B2 = B2;
  probe.validate();
  const double bound = std::min(1.0, std::pow(std::abs(B1), -alpha1 - 1.0)) *
                       std::min(1.0, std::pow(std::abs(B2), -alpha2 - 1.0));
  OscOptions opt;
  opt.check = false;
  PhaseAmplitude one = [](double, double, double) { return cplx(1.0); };
  const double v = integrate_on_phase_lines(alpha1, alpha2, A, B1, B2, 0.0, {0.0, 2.0}, one, opt).value.real();
  return {v, bound};
}

void write_envelope_csv(const EnvelopeReport& r, std::ostream& out) {
  out << "alpha1,alpha2,A,B1,B2,lambda,abs_I,envelope,ratio\n";
  out.precision(17);
  for (const auto& w : r.rows)
    out << w.alpha1 << ',' << w.alpha2 << ',' << w.A << ',' << w.B1 << ',' << w.B2 << ',' << w.lambda << ','
        << w.abs_I << ',' << w.envelope << ',' << w.ratio << '\n';
}

}  // namespace blockrad
