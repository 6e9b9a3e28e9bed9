#include <cmath>

#include "blockrad/errors.hpp"
#include "blockrad/kernels.hpp"
#include "blockrad/lap.hpp"
#include "blockrad/quadrature.hpp"
#include "blockrad/specfun.hpp"
#include "doctest.h"

using namespace blockrad;

namespace {

BlockRadialProfile gaussian(Dimensions D, const Grid1D& g, double a = 0.5) {
  return BlockRadialProfile(D, g, g, [a](double x, double y) { return cplx(std::exp(-a * (x * x + y * y))); });
}

double rel_l2(const BlockRadialProfile& a, const BlockRadialProfile& b) {
  const BlockRadialProfile d = a - b;
  return std::sqrt(inner_product(d, d).real() / inner_product(b, b).real());
}

// Excision oracle: int_{|r - r0| > delta} g / (r - r0) over the window, Richardson in delta.
double excision_oracle(const std::function<double(double)>& g, double r0, double lo, double hi) {
  std::vector<cplx> v;
  for (int k = 0; k < 6; ++k) {
    const double delta = std::ldexp(1e-2, -k);
    double s = 0.0;
    for (const Rule& q : {graded_gl(lo, r0 - delta, r0 - delta, delta, 24), graded_gl(r0 + delta, hi, r0 + delta, delta, 24)})
      for (std::size_t i = 0; i < q.size(); ++i) s += q.w[i] * g(q.x[i]) / (q.x[i] - r0);
    v.push_back(s);
  }
  return richardson(v).real();
}

// Independent eps-quadrature of int chi_m h / (P + i eps), extrapolated over an eps ladder.
cplx eps_oracle(const SymbolModel& P, int m, const std::function<double(double)>& h) {
  const Interval w = P.cutoffs.chi[m].support();
  const double r0 = P.zeros[m];
  std::vector<cplx> v;
  for (int k = 4; k <= 11; ++k) {
    const double eps = std::ldexp(1.0, -k);
    const Rule q = graded_gl(w.lo, w.hi, r0, eps / 32, 24);
    cplx s = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) s += q.w[i] * P.cutoffs.chi[m](q.x[i]) * h(q.x[i]) / cplx(P.P(q.x[i]), eps);
    v.push_back(s);
  }
  return richardson(v);
}

}  // namespace

TEST_CASE("symbol validation") {
  auto rep = validate_symbol(helmholtz_symbol(), 3);
  CHECK(rep.valid);
  REQUIRE(rep.slopes.size() == 2);
  // r^2 / (r^2 - 1) = 1 + 1/(r^2 - 1): k-th derivative decays like r^{-2-k}
  CHECK(rep.slopes[0] == doctest::Approx(-3.0).epsilon(0.03));
  CHECK(rep.slopes[1] == doctest::Approx(-4.0).epsilon(0.03));
  CHECK(rep.zero_slopes[0] == doctest::Approx(2.0));

  auto rel = relativistic_symbol(0.5, 2.0, 1.0);
  REQUIRE(rel.zeros.size() == 1);
  CHECK(rel.zeros[0] == doctest::Approx(std::sqrt(4.0 - 0.5)).epsilon(1e-12));
  CHECK(validate_symbol(rel, 4).valid);

  auto none = polynomial_symbol({1.0, 0.0, 1.0});
  CHECK(none.zeros.empty());
  CHECK(validate_symbol(none, 3).valid);

  // declaring the wrong order makes r^s/P grow
  SymbolModel wrong = helmholtz_symbol();
  wrong.order = 5.0;
  auto bad = validate_symbol(wrong, 3);
  CHECK_FALSE(bad.valid);
  CHECK(bad.violations.size() == 1);
}

TEST_CASE("principal value integrals") {
  const SmoothCutoff eta = make_bump({-0.5, 0.5}, {-0.25, 0.25});
  CHECK(std::abs(pv_integral([](double) { return 3.0; }, 0.0, {-1, 1}, eta)) < 1e-13);
  CHECK(pv_integral([](double r) { return r; }, 0.0, {-1, 1}, eta) == doctest::Approx(2.0).epsilon(1e-13));
  // closed form: p.v. int_{-1}^{2} dr / r = log 2
  CHECK(pv_integral([](double) { return 1.0; }, 0.0, {-1, 2}, eta) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  auto g = [](double r) { return std::exp(r) * std::cos(3 * r); };
  const SmoothCutoff e2 = make_bump({-0.3, 0.3}, {-0.1, 0.1});
  for (auto [r0, lo, hi] : {std::tuple{0.3, -0.5, 1.1}, std::tuple{1.0, 0.6, 1.4}, std::tuple{2.0, 1.6, 3.5}}) {
    const double a = pv_integral(g, r0, {lo, hi}, e2);
    CHECK(std::abs(a - excision_oracle(g, r0, lo, hi)) < 1e-6 * std::max(1.0, std::abs(a)));
  }
  CHECK_THROWS_AS(pv_integral(g, 2.0, {0.0, 1.0}, eta), DomainError);
}

TEST_CASE("Plemelj limits") {
  // P(r) = r - 1: zero at 1 with P' = 1; h(1) = 1 gives imaginary part -pi
  auto lin = polynomial_symbol({-1.0, 1.0});
  auto h = [](double r) { return std::exp(-4 * (r - 1) * (r - 1)); };
  CHECK(plemelj_limit(lin, 0, h).imag() == doctest::Approx(-M_PI).epsilon(1e-14));
  // h vanishing near the zero: no delta term
  auto far = [](double r) { return r > 1.3 ? std::exp(-1.0 / (r - 1.3)) : 0.0; };
  CHECK(plemelj_limit(lin, 0, far).imag() == 0.0);

  // battery against the eps oracle, including a zero with P' < 0
  std::vector<SymbolModel> Ps{helmholtz_symbol(), fractional_symbol(1.5), relativistic_symbol(1.0, 3.0, 1.0),
                              polynomial_symbol({2.0, -3.0, 1.0}, 0.2), lin};
  std::vector<std::function<double(double)>> hs{[](double r) { return std::exp(-r * r); },
                                                [](double r) { return r * std::sin(2 * r) + 0.5; }};
  for (const auto& P : Ps)
    for (int m = 0; m < int(P.zeros.size()); ++m)
      for (const auto& hh : hs) {
        const cplx a = plemelj_limit(P, m, hh), b = eps_oracle(P, m, hh);
        CHECK(std::abs(a - b) < 1e-6 * std::abs(b));
      }
  CHECK_THROWS_AS(plemelj_limit(lin, 1, h), DomainError);
}

TEST_CASE("resolvent kernel Phi^m") {
  auto H = helmholtz_symbol();
  for (double z : {0.5, 3.0, 17.0, 60.0}) {
    const cplx v = phi_m_kernel(H, 0, 3, z);
    CHECK(v.imag() == doctest::Approx(-0.5 * M_PI * std::sqrt(2 / M_PI) * std::sin(z) / z).epsilon(1e-12));
  }
  // oracle for the real part: the excision route on the full integrand
  for (double z : {2.0, 11.0}) {
    auto g = [&](double r) { return H.cutoffs.chi[0](r) * r * r / (r + 1.0) * sphere_kernel(3, r * z); };
    CHECK(phi_m_kernel(H, 0, 3, z).real() == doctest::Approx(excision_oracle(g, 1.0, 0.5, 1.5)).epsilon(1e-7));
  }
  CHECK_THROWS_AS(phi_m_kernel(H, 0, 3, 2e4), BudgetExceeded);
  CHECK_THROWS_AS(phi_m_kernel(H, 0, 3, 0.0), DomainError);

  auto rep = check_phim_asymptotics(H, 0, 4);
  CHECK(std::abs(rep.leading_slope + 1.5) < 0.15);
  CHECK(rep.residual_slope <= -1.5 - 1 + 0.2);
  CHECK(std::abs(rep.frequency - 1.0) < 0.01);
  // d = 3: the cutoff tail dominates the remainder below z ~ 100
  auto far3 = check_phim_asymptotics(H, 0, 3, 100.0, 500.0);
  CHECK(far3.residual_slope <= -1.0 - 1 + 0.2);
}

TEST_CASE("regular part") {
  const Dimensions D{3, 1};
  const Grid1D g = make_panel_grid(16.0, 8, 17);
  auto f = gaussian(D, g);
  auto none = polynomial_symbol({1.0, 0.0, 1.0});
  auto R = regular_part(f, none);
  // radial oracle: u(t) = int r^2 e^{-r^2/2} / (r^2 + 1) J_3(r t) dr
  const Rule q = composite_gl(0.0, 12.0, 48, 20);
  for (std::size_t i = 0; i < g.size(); i += 9)
    for (std::size_t k = 0; k < g.size(); k += 11) {
      const double t = std::hypot(g.x[i], g.x[k]);
      double o = 0.0;
      for (std::size_t n = 0; n < q.size(); ++n)
        o += q.w[n] * q.x[n] * q.x[n] * std::exp(-0.5 * q.x[n] * q.x[n]) / (q.x[n] * q.x[n] + 1) * sphere_kernel(3, q.x[n] * t);
      CHECK(std::abs(R.at(i, k) - o) < 1e-6);
    }
  // input with spectrum inside the zero plateau is removed, up to the truncation of its slow tail
  const SmoothCutoff narrow = make_bump({0.6, 1.4}, {0.8, 1.2});
  const Rule qb = composite_gl(0.6, 1.4, 16, 20);
  const Grid1D gw = make_panel_grid(40.0, 25, 17);
  BlockRadialProfile fn(D, gw, gw, [&](double a, double b) {
    double s = 0.0;
    for (std::size_t n = 0; n < qb.size(); ++n)
      s += qb.w[n] * narrow(qb.x[n]) * qb.x[n] * qb.x[n] * sphere_kernel(3, qb.x[n] * std::hypot(a, b));
    return cplx(s);
  });
  auto Rn = regular_part(fn, helmholtz_symbol(0.45));
  CHECK(std::sqrt(inner_product(Rn, Rn).real()) < 1e-3 * std::sqrt(inner_product(fn, fn).real()));
  // without zeros the resolvent is the regular part
  auto u = resolve(f, none);
  CHECK(u.delta.empty());
  CHECK(rel_l2(u.profile, R) < 1e-12);
}

TEST_CASE("Helmholtz resolvent: imaginary part, parts and linearity") {
  const Dimensions D{3, 1};
  const Grid1D g = make_panel_grid(24.0, 12, 17);
  auto f = gaussian(D, g);
  auto H = helmholtz_symbol();
  auto U = resolve(f, H);
  // Im u = -pi/2 T f and T f = e^{-1/2} J_3(|x|) for this f
  for (std::size_t i = 0; i < g.size(); i += 3)
    for (std::size_t k = 0; k < g.size(); k += 3) {
      const double tf = std::exp(-0.5) * sphere_kernel(3, std::hypot(g.x[i], g.x[k]));
      CHECK(std::abs(U.profile.at(i, k).imag() + 0.5 * M_PI * tf) < 1e-9);
    }
  BlockRadialProfile sum = U.regular;
  for (std::size_t m = 0; m < U.delta.size(); ++m) sum = sum + U.delta[m] + U.pv[m];
  CHECK(rel_l2(sum, U.profile) < 1e-10);

  auto h = BlockRadialProfile(D, g, g, [](double a, double b) { return cplx((1 + 0.3 * a * a) * std::exp(-0.5 * (a * a + b * b)), 0.0); });
  auto lhs = resolve(f + cplx(0.5, -2) * h, H).profile;
  auto rhs = U.profile + cplx(0.5, -2) * resolve(h, H).profile;
  CHECK(rel_l2(lhs, rhs) < 1e-10);

}

TEST_CASE("resolvent residual") {
  const Dimensions D{3, 1};
  const Grid1D g = make_panel_grid(40.0, 24, 17);
  auto f = gaussian(D, g);
  for (const auto& P : {helmholtz_symbol(), fractional_symbol(1.5)}) {
    auto res = resolvent_residual(f, P, resolve(f, P).profile);
    CHECK(res.relative < 1e-3);
    CHECK(res.ball_radius == doctest::Approx(15.0));
  }
  auto other = gaussian(D, make_panel_grid(20.0, 10, 17));
  CHECK_THROWS_AS(resolvent_residual(other, helmholtz_symbol(), f), DomainError);
}

TEST_CASE("eps ladder converges to the boundary value") {
  const Dimensions D{3, 1};
  const Grid1D g = make_panel_grid(10.0, 6, 17), og = make_panel_grid(6.0, 2, 17);
  auto f = gaussian(D, g);
  auto P = fractional_symbol(1.5);
  ResolveOptions o;
  o.out1 = og;
  o.out2 = og;
  auto U = resolve(f, P, o).profile;
  std::vector<BlockRadialProfile> ladder;
  for (int k = 3; k <= 8; ++k) ladder.push_back(eps_resolvent(f, P, std::ldexp(1.0, -k), o));
  BlockRadialProfile ex = U;
  for (std::size_t i = 0; i < ex.values().size(); ++i) {
    std::vector<cplx> v;
    for (const auto& u : ladder) v.push_back(u.values()[i]);
    ex.values()[i] = richardson(v);
  }
  CHECK(rel_l2(ladder.back(), U) < 0.05);
  CHECK(rel_l2(ex, U) < 1e-3);
  // large eps kills the field
  auto big = eps_resolvent(f, P, 1e12, o);
  CHECK(std::sqrt(inner_product(big, big).real()) < 1e-10);
}

TEST_CASE("band limit guard") {
  const Dimensions D{3, 1};
  const Grid1D g = make_panel_grid(8.0, 2, 9);
  auto f = gaussian(D, g, 8.0);
  CHECK(band_tail(f) > 1e-8);
  CHECK_THROWS_AS(resolve(f, helmholtz_symbol()), TruncationError);
  CHECK(band_tail(gaussian(D, make_panel_grid(16.0, 8, 17))) < 1e-9);
}
