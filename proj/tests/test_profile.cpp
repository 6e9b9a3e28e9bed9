#include <cmath>
#include <cstdio>
#include <sstream>

#include "blockrad/errors.hpp"
#include "blockrad/profile.hpp"
#include "blockrad/specfun.hpp"
#include "doctest.h"

using namespace blockrad;

namespace {

BlockRadialProfile gaussian(Dimensions D, const Grid1D& g) {
  return BlockRadialProfile(D, g, g, [](double a, double b) { return cplx(std::exp(-0.5 * (a * a + b * b))); });
}

}  // namespace

TEST_CASE("grid construction") {
  Grid1D g = default_grid();
  CHECK(g.size() == 385);
  CHECK(g.rmax() == doctest::Approx(40.0));
  CHECK(g.x.front() == 0.0);
  // panel weights integrate polynomials of degree 2*17-3 exactly on each panel
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g.w[i] * std::pow(g.x[i] / 40.0, 20);
  CHECK(s == doctest::Approx(40.0 / 21).epsilon(1e-13));
  Grid1D t = make_grid_from_nodes({0.0, 0.5, 1.5, 2.0}, 0);
  CHECK(t.w[0] == doctest::Approx(0.25));
  CHECK(t.w[1] == doctest::Approx(0.75));
  CHECK(t.w[3] == doctest::Approx(0.25));
  CHECK_THROWS(make_grid_from_nodes({0.0, 1.0, 0.5}, 0));
  CHECK_THROWS(make_grid_from_nodes({0.1, 1.0}, 0));
}

TEST_CASE("Gaussian norms") {
  for (Dimensions D : {Dimensions{3, 1}, Dimensions{4, 2}, Dimensions{5, 2}, Dimensions{6, 3}}) {
    auto f = gaussian(D, default_grid());
    CHECK(lebesgue_norm(f, 2.0) == doctest::Approx(std::pow(M_PI, D.d / 4.0)).epsilon(1e-10));
    for (double p : {1.0, 1.5, 3.0}) {
      const double exact = std::pow(2 * M_PI / p, D.d / (2 * p));
      CHECK(lebesgue_norm(f, p) == doctest::Approx(exact).epsilon(1e-10));
    }
    CHECK(lebesgue_norm(f, INFINITY) == doctest::Approx(1.0));
    CHECK(inner_product(f, f).real() == doctest::Approx(std::pow(M_PI, D.d / 2.0)).epsilon(1e-10));
    CHECK(D.c_dk() == doctest::Approx(surface_measure(D.dy()) * surface_measure(D.dz())));
  }
}

TEST_CASE("Lorentz norms of indicators and ordering") {
  for (double p : {1.2, 2.0, 4.0}) {
    // ||1_E||_{p,r} = (p/r)^{1/r} |E|^{1/p}
    for (auto spec : {strong_lorentz(p), lebesgue(p), weak_lorentz(p)}) {
      const double c = std::isinf(spec.r) ? 1.0 : std::pow(p / spec.r, 1.0 / spec.r);
      CHECK(lorentz_from_samples({1.0}, {3.0}, spec) == doctest::Approx(c * std::pow(3.0, 1.0 / p)));
      CHECK(lorentz_from_samples({2.0, 0.0}, {3.0, 5.0}, spec) == doctest::Approx(2 * c * std::pow(3.0, 1.0 / p)));
    }
    // two-level step function: values 2 on measure 1, 1 on measure 3
    const std::vector<double> v{1.0, 2.0}, mu{3.0, 1.0};
    const double weak = std::max(2.0, std::pow(4.0, 1.0 / p));
    const double strong = p * (2.0 + (std::pow(4.0, 1.0 / p) - 1.0));
    const double leb = std::pow(std::pow(2.0, p) + 3.0, 1.0 / p);
    CHECK(lorentz_from_samples(v, mu, weak_lorentz(p)) == doctest::Approx(weak));
    CHECK(lorentz_from_samples(v, mu, strong_lorentz(p)) == doctest::Approx(strong));
    CHECK(lorentz_from_samples(v, mu, lebesgue(p)) == doctest::Approx(leb));
  }
  auto f = gaussian({4, 2}, default_grid());
  const double a = lorentz_norm(f, strong_lorentz(1.5));
  const double b = lorentz_norm(f, lebesgue(1.5));
  const double c = lorentz_norm(f, weak_lorentz(1.5));
  CHECK(a > b);
  CHECK(b > c);
  CHECK(b == doctest::Approx(lebesgue_norm(f, 1.5)).epsilon(1e-3));
}

TEST_CASE("Lorentz spec duality") {
  auto d = dual(strong_lorentz(4.0 / 3));
  CHECK(d.p == doctest::Approx(4.0));
  CHECK(std::isinf(d.r));
  d = dual(weak_lorentz(3.0));
  CHECK(d.p == doctest::Approx(1.5));
  CHECK(d.r == 1.0);
  CHECK(conjugate_exponent(1.0) == INFINITY);
  CHECK_THROWS(LorentzSpec{0.5, 1.0}.validate());
}

TEST_CASE("mixed norms reduce to Lebesgue norms when exponents agree") {
  auto f = gaussian({4, 2}, default_grid());
  for (double p : {1.5, 2.0, 3.0}) {
    const double L = lebesgue_norm(f, p);
    CHECK(mixed_norm(f, lebesgue(p), lebesgue(p), MixedOrder::y_outer) == doctest::Approx(L).epsilon(1e-10));
    CHECK(mixed_norm(f, lebesgue(p), lebesgue(p), MixedOrder::z_outer) == doctest::Approx(L).epsilon(1e-10));
  }
  // separable Gaussian: mixed norm factorizes
  const double m = mixed_norm(f, lebesgue(1.5), lebesgue(3.0), MixedOrder::y_outer);
  const double expect = std::pow(2 * M_PI / 1.5, 2.0 / 3.0) * std::pow(2 * M_PI / 3.0, 2.0 / 6.0);
  CHECK(m == doctest::Approx(expect).epsilon(1e-9));
  CHECK(x_norm_upper(f, lebesgue(1.5), lebesgue(3.0)) <= m * (1 + 1e-12));
}

TEST_CASE("interpolation is spectrally accurate on panel grids") {
  auto f = gaussian({4, 2}, default_grid());
  for (double a : {0.13, 1.7, 3.3}) {
    for (double b : {0.0, 0.6, 2.9}) {
      CHECK(std::abs(f.interpolate(a, b) - std::exp(-0.5 * (a * a + b * b))) < 1e-9);
    }
  }
  CHECK(f.interpolate(41.0, 0.0) == cplx(0.0));
}

TEST_CASE("arithmetic and finiteness") {
  auto f = gaussian({3, 1}, make_panel_grid(10.0, 5, 9));
  auto g = cplx(0, 2) * f;
  auto h = f + g;
  CHECK(h.at(0, 0) == cplx(1, 2));
  CHECK((h - g).at(0, 0) == cplx(1, 0));
  CHECK(h.real_part().at(0, 0) == cplx(1, 0));
  CHECK(h.imag_part().at(0, 0) == cplx(2, 0));
  CHECK(h.finite());
  h.at(1, 1) = cplx(NAN, 0);
  CHECK(!h.finite());
}

TEST_CASE("serialization round trip") {
  auto f = gaussian({5, 2}, make_panel_grid(8.0, 4, 7));
  f.at(2, 3) = cplx(0.1, -1.0 / 3.0);
  std::stringstream ss;
  save_text(f, ss);
  auto g = load_text(ss);
  CHECK(g.values() == f.values());
  CHECK(g.grid1().x == f.grid1().x);
  CHECK(g.dims().d == 5);
  CHECK(g.dims().k == 2);
  std::stringstream bs;
  save_binary(f, bs);
  auto h = load_binary(bs);
  CHECK(h.values() == f.values());
  CHECK(h.grid2() == f.grid2());
  std::stringstream bad("nonsense 1");
  CHECK_THROWS(load_text(bad));
}
