#include <cmath>

#include "blockrad/quadrature.hpp"
#include "doctest.h"

using namespace blockrad;

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  const Rule& r = gauss_legendre(10);
  for (int deg = 0; deg <= 19; ++deg) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.w[i] * std::pow(r.x[i], deg);
    const double exact = (deg % 2 == 1) ? 0.0 : 2.0 / (deg + 1);
    CHECK(s == doctest::Approx(exact).epsilon(1e-14));
  }
}

TEST_CASE("Gauss-Jacobi moments match Beta integrals") {
  // int (1-x)^a (1+x)^b dx = 2^{a+b+1} B(a+1, b+1)
  for (double a : {-0.5, 0.0, 0.5, 1.5}) {
    for (double b : {-0.5, 0.5, 2.0}) {
      const Rule& r = gauss_jacobi(12, a, b);
      double s = 0.0, s1 = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) {
        s += r.w[i];
        s1 += r.w[i] * (1.0 + r.x[i]);
      }
      const double exact =
          std::pow(2.0, a + b + 1) * std::tgamma(a + 1) * std::tgamma(b + 1) / std::tgamma(a + b + 2);
      const double exact1 =
          std::pow(2.0, a + b + 2) * std::tgamma(a + 1) * std::tgamma(b + 2) / std::tgamma(a + b + 3);
      CHECK(s == doctest::Approx(exact).epsilon(1e-13));
      CHECK(s1 == doctest::Approx(exact1).epsilon(1e-13));
    }
  }
}

TEST_CASE("Chebyshev case of Gauss-Jacobi has equal weights") {
  const Rule& r = gauss_jacobi(7, -0.5, -0.5);
  for (std::size_t i = 0; i < r.size(); ++i) {
    CHECK(r.w[i] == doctest::Approx(M_PI / 7).epsilon(1e-13));
    CHECK(r.x[i] == doctest::Approx(std::cos((2.0 * (6 - i) + 1) * M_PI / 14)).epsilon(1e-13));
  }
}

TEST_CASE("large Gauss-Jacobi rules stay accurate") {
  const Rule& r = gauss_jacobi(600, 0.5, -0.5);
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r.w[i] * std::cos(40.0 * r.x[i]);
  // oracle: composite Gauss-Legendre after x = cos(t) substitution removes the singularities
  Rule c = composite_gl(0.0, M_PI, 200, 20);
  double o = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double t = c.x[i], x = std::cos(t);
    // (1-x)^{1/2} (1+x)^{-1/2} dx = (1-cos t) dt
    o += c.w[i] * (1.0 - x) * std::cos(40.0 * x);
  }
  CHECK(s == doctest::Approx(o).epsilon(1e-12));
}

TEST_CASE("Gauss-Lobatto includes endpoints and is exact to degree 2n-3") {
  const Rule& r = gauss_lobatto(9);
  CHECK(r.x.front() == -1.0);
  CHECK(r.x.back() == 1.0);
  for (int deg = 0; deg <= 15; ++deg) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.w[i] * std::pow(r.x[i], deg);
    const double exact = (deg % 2 == 1) ? 0.0 : 2.0 / (deg + 1);
    CHECK(s == doctest::Approx(exact).epsilon(1e-14));
  }
}

TEST_CASE("composite Jacobi rule handles endpoint singularities") {
  for (double a : {-0.5, 0.5, 1.5}) {
    const Rule r = composite_jacobi(a, a, 7, 16);
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.w[i] * std::cos(30.0 * r.x[i]);
    const Rule& ref = gauss_jacobi(200, a, a);
    double o = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) o += ref.w[i] * std::cos(30.0 * ref.x[i]);
    CHECK(std::abs(s - o) < 1e-12);
  }
}

TEST_CASE("graded rule resolves a narrow Lorentzian") {
  const double eps = 1e-4;
  Rule r = graded_gl(0.0, 2.0, 1.0, eps / 4, 16);
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r.w[i] * eps / ((r.x[i] - 1.0) * (r.x[i] - 1.0) + eps * eps);
  CHECK(s == doctest::Approx(2.0 * std::atan(1.0 / eps)).epsilon(1e-12));
}
