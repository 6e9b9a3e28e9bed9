#include <cmath>
#include <string>
#include <vector>

#include "blockrad/diagnostics.hpp"
#include "blockrad/errors.hpp"
#include "blockrad/profile.hpp"
#include "blockrad/specfun.hpp"
#include "blockrad/transform.hpp"
#include "doctest.h"

using namespace blockrad;

namespace {

BlockRadialProfile gaussian(Dimensions D, const Grid1D& g, double a = 0.5) {
  return BlockRadialProfile(D, g, g, [a](double x, double y) { return cplx(std::exp(-a * (x * x + y * y))); });
}

double max_diff(const BlockRadialProfile& f, const std::function<cplx(double, double)>& g) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.n1(); ++i)
    for (std::size_t j = 0; j < f.n2(); ++j)
      m = std::max(m, std::abs(f.at(i, j) - g(f.grid1().x[i], f.grid2().x[j])));
  return m;
}

}  // namespace

TEST_CASE("Gaussian is a fixed point of the transform") {
  for (Dimensions D : {Dimensions{3, 1}, Dimensions{4, 2}, Dimensions{5, 2}, Dimensions{7, 3}}) {
    auto f = gaussian(D, default_grid());
    const Grid1D fq = resolved_frequency_grid(default_grid(), 40.0);
    CHECK(transform_resolved(default_grid(), fq.rmax()));
    CHECK(transform_resolved(fq, 40.0));
    auto fh = forward_transform(f, {fq, fq});
    CHECK(max_diff(fh, [](double a, double b) { return cplx(std::exp(-0.5 * (a * a + b * b))); }) < 1e-10);
    // Plancherel
    CHECK(lebesgue_norm(fh, 2.0) == doctest::Approx(std::pow(M_PI, D.d / 4.0)).epsilon(1e-10));
  }
}

TEST_CASE("scaled Gaussian transforms to the dual Gaussian") {
  Dimensions D{4, 2};
  auto f = gaussian(D, default_grid(), 2.0);  // e^{-2|x|^2} -> 4^{-d/2} e^{-|xi|^2/8}
  const Grid1D fq = make_panel_grid(7.5, 8, 17);
  auto fh = forward_transform(f, {fq, fq});
  CHECK(max_diff(fh, [](double a, double b) { return cplx(std::pow(4.0, -2.0) * std::exp(-(a * a + b * b) / 8)); }) <
        1e-10);
}

TEST_CASE("inverse undoes forward") {
  Dimensions D{5, 2};
  auto f = BlockRadialProfile(D, default_grid(), default_grid(), [](double a, double b) {
    return cplx((1 + a * a) * std::exp(-0.5 * (a * a + b * b)), b * b * std::exp(-0.5 * (a * a + b * b)));
  });
  const Grid1D fq = resolved_frequency_grid(default_grid(), 40.0);
  auto g = inverse_transform(forward_transform(f, {fq, fq}), {default_grid(), default_grid()});
  CHECK(max_diff(g, [&](double a, double b) { return f.interpolate(a, b); }) < 1e-9);
}

TEST_CASE("angular rule weights") {
  for (Dimensions D : {Dimensions{3, 1}, Dimensions{4, 2}, Dimensions{6, 2}}) {
    auto r = angular_rule(D, 64);
    double s = 0.0;
    for (double w : r.w) s += w;
    CHECK(D.c_dk() * s == doctest::Approx(surface_measure(D.d)).epsilon(1e-13));
    // cos^2 moment: int_{S^{d-1}} y_1... oracle |y|^2 averages (d-k)/d
    double c2 = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) c2 += r.w[i] * r.c[i] * r.c[i];
    CHECK(c2 / s == doctest::Approx(double(D.dy()) / D.d).epsilon(1e-13));
  }
}

TEST_CASE("sphere restriction of a Gaussian") {
  Dimensions D{4, 2};
  auto f = gaussian(D, default_grid());
  const Grid1D fq = make_panel_grid(7.5, 8, 17);
  auto fh = forward_transform(f, {fq, fq});
  auto r = restrict_to_sphere(fh, 64);
  for (auto v : r.values) CHECK(std::abs(v - std::exp(-0.5)) < 1e-10);
  CHECK(sphere_l2(r) == doctest::Approx(std::exp(-1.0) * surface_measure(4)).epsilon(1e-10));
  auto s = restrict_from_spatial(f, 1.0, 64);
  for (auto v : s.values) CHECK(std::abs(v - std::exp(-0.5)) < 1e-10);
  auto s2 = restrict_from_spatial(f, 2.0, 64);
  for (auto v : s2.values) CHECK(std::abs(v - std::exp(-2.0)) < 1e-10);
  CHECK_THROWS_AS(restrict_to_sphere(fh, 10), DomainError);
  auto small = gaussian(D, make_panel_grid(0.5, 2, 5));
  CHECK_THROWS_AS(restrict_to_sphere(small, 64), CoverageError);
}

TEST_CASE("multipliers") {
  Dimensions D{3, 1};
  auto f = gaussian(D, default_grid());
  auto id = apply_multiplier(f, [](double) { return cplx(1.0); });
  CHECK(max_diff(id, [&](double a, double b) { return f.interpolate(a, b); }) < 1e-10);
  // e^{-|xi|^2/2} applied to e^{-|x|^2/2}: result has transform e^{-|xi|^2}, i.e. 2^{-d/2} e^{-|x|^2/4}
  auto g = apply_multiplier(f, [](double r) { return cplx(std::exp(-0.5 * r * r)); });
  CHECK(max_diff(g, [](double a, double b) { return cplx(std::pow(2.0, -1.5) * std::exp(-(a * a + b * b) / 4)); }) <
        1e-10);
}

TEST_CASE("under-resolved transforms warn") {
  std::vector<std::string> seen;
  set_warning_handler([&](const std::string& m) { seen.push_back(m); });
  Dimensions D{3, 1};
  auto coarse = gaussian(D, make_panel_grid(40.0, 4, 9));
  forward_transform(coarse, {default_grid(), default_grid()});
  CHECK(!seen.empty());
  CHECK(transform_resolved(default_grid(), 5.0));
  CHECK(!transform_resolved(make_panel_grid(40.0, 4, 9), 40.0));
  set_warning_handler(nullptr);
}
