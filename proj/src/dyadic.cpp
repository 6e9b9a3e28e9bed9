#include "blockrad/dyadic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "blockrad/errors.hpp"
#include "blockrad/quadrature.hpp"
#include "blockrad/symbol.hpp"

namespace blockrad {
namespace {

constexpr int kPanels = 512;
constexpr double kPanelWidth = 2.0 / kPanels;

struct StepTable {
  std::array<double, kPanels + 1> cum{};  // integral of g from -1 to -1 + i h
  double total = 0.0;
};

const StepTable& step_table() {
  static const StepTable table = [] {
    StepTable t;
    const Rule& gl = gauss_legendre(20);
    t.cum[0] = 0.0;
    for (int i = 0; i < kPanels; ++i) {
      const double a = -1.0 + i * kPanelWidth;
      const Rule r = mapped(gl, a, a + kPanelWidth);
      double s = 0.0;
      for (std::size_t q = 0; q < r.size(); ++q) s += r.w[q] * bump_g(r.x[q]);
      t.cum[i + 1] = t.cum[i] + s;
    }
    t.total = t.cum[kPanels];
    return t;
  }();
  return table;
}

// Integral of g from -1 to v for v <= 0.
double lower_integral(double v) {
  const StepTable& t = step_table();
  if (v <= -1.0) return 0.0;
  int i = std::min(kPanels - 1, int((v + 1.0) / kPanelWidth));
  const double a = -1.0 + i * kPanelWidth;
  if (v == a) return t.cum[i];
  const Rule& gl = gauss_legendre(10);
  const double h = 0.5 * (v - a), c = 0.5 * (v + a);
  double s = 0.0;
  for (std::size_t q = 0; q < gl.size(); ++q) s += gl.w[q] * bump_g(c + h * gl.x[q]);
  return t.cum[i] + h * s;
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

double bump_g(double t) {
  if (!(t > -1.0 && t < 1.0)) return 0.0;
  return std::exp(-1.0 / (1.0 - t * t));
}

double bump_g_derivative(int n, double t) {
  if (n < 0 || n > kMaxDerivative) throw DomainError("bump_g_derivative: order out of range");
  if (!(t > -1.0 && t < 1.0)) return 0.0;
  if (n == 0) return bump_g(t);
  // g = exp(phi), phi = -1/(1-t^2); g^{(m+1)} = sum_k C(m,k) phi^{(k+1)} g^{(m-k)}.
  std::array<double, kMaxDerivative + 2> phi{}, g{};
  double fact = 1.0;
  for (int k = 1; k <= n; ++k) {
    fact *= k;
    double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    phi[k] = -0.5 * fact * (std::pow(1.0 - t, -k - 1) + sgn * std::pow(1.0 + t, -k - 1));
  }
  g[0] = bump_g(t);
  for (int m = 0; m < n; ++m) {
    double s = 0.0;
    for (int k = 0; k <= m; ++k) s += binom(m, k) * phi[k + 1] * g[m - k];
    g[m + 1] = s;
  }
  return g[n];
}

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double u = 2.0 * t - 1.0;
  const double Z = step_table().total;
  // Evaluating the upper half by reflection keeps step(t) + step(1-t) = 1 to rounding.
  if (u > 0.0) return 1.0 - lower_integral(-u) / Z;
  return lower_integral(u) / Z;
}

double smooth_step_derivative(int n, double t) {
  if (n < 0 || n > kMaxDerivative) throw DomainError("smooth_step_derivative: order out of range");
  if (n == 0) return smooth_step(t);
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return std::ldexp(bump_g_derivative(n - 1, 2.0 * t - 1.0), n) / step_table().total;
}

SmoothCutoff::SmoothCutoff(Interval support, Interval plateau) : support_(support), plateau_(plateau) {
  auto bad = [](const std::string& why) { throw IntervalError("make_bump: " + why); };
  if (!(plateau.lo <= plateau.hi)) bad("plateau is empty");
  if (std::isinf(support.lo) ? !std::isinf(plateau.lo) : !(support.lo < plateau.lo))
    bad("plateau touches the lower support boundary");
  if (std::isinf(support.hi) ? !std::isinf(plateau.hi) : !(plateau.hi < support.hi))
    bad("plateau touches the upper support boundary");
}

double SmoothCutoff::rise(int n, double x) const {
  if (std::isinf(support_.lo)) return n == 0 ? 1.0 : 0.0;
  const double w = plateau_.lo - support_.lo;
  return smooth_step_derivative(n, (x - support_.lo) / w) / std::pow(w, n);
}

double SmoothCutoff::fall(int n, double x) const {
  if (std::isinf(support_.hi)) return n == 0 ? 1.0 : 0.0;
  const double w = support_.hi - plateau_.hi;
  const double v = smooth_step_derivative(n, (support_.hi - x) / w) / std::pow(w, n);
  return (n % 2 == 0) ? v : -v;
}

double SmoothCutoff::operator()(double x) const {
  if (x <= support_.lo || x >= support_.hi) return 0.0;
  if (plateau_.contains(x)) return 1.0;
  return rise(0, x) * fall(0, x);
}

double SmoothCutoff::derivative(int order, double x) const {
  if (order < 0 || order > kMaxDerivative) throw DomainError("SmoothCutoff::derivative: order out of range");
  if (order == 0) return (*this)(x);
  if (x <= support_.lo || x >= support_.hi || plateau_.contains(x)) return 0.0;
  double s = 0.0;
  for (int k = 0; k <= order; ++k) s += binom(order, k) * rise(k, x) * fall(order - k, x);
  return s;
}

SmoothCutoff make_bump(Interval support, Interval plateau) { return SmoothCutoff(support, plateau); }

SmoothCutoff make_tau() { return make_bump({0.5, 1.5}, {0.75, 1.25}); }

double RadialCutoffFamily::sum(double z) const {
  double s = chi0(z);
  for (int j = 1; j <= j_max; ++j) s += term(j, z);
  return s;
}

RadialCutoffFamily make_partition(int j_max) {
  if (j_max < 1) throw DomainError("make_partition: j_max must be >= 1");
  RadialCutoffFamily f;
  f.chi0 = make_bump({-kInf, 2.0}, {-kInf, 1.0});
  f.chi = make_bump({0.5, 2.0}, {1.0, 1.0});
  f.j_max = j_max;
  return f;
}

double ZeroCutoffs::complement(double r) const {
  double s = 0.0;
  for (const auto& c : chi) s += c(r);
  return 1.0 - s;
}

double default_zero_delta(const std::vector<double>& zeros) {
  if (zeros.empty()) return 0.0;
  double m = zeros.front();
  for (std::size_t i = 1; i < zeros.size(); ++i) m = std::min(m, zeros[i] - zeros[i - 1]);
  return 0.25 * m;
}

ZeroCutoffs make_zero_cutoffs(const std::vector<double>& zeros, const std::function<double(double)>& dP,
                              double delta) {
  ZeroCutoffs out;
  out.zeros = zeros;
  out.delta = delta;
  if (zeros.empty()) return out;
  if (!(delta > 0.0)) throw DeltaTooLarge("make_zero_cutoffs: delta must be positive");
  for (std::size_t m = 0; m < zeros.size(); ++m) {
    const double r = zeros[m];
    if (!(r - 2.0 * delta > 0.0)) throw DeltaTooLarge("make_zero_cutoffs: support of chi_m reaches 0");
    if (m + 1 < zeros.size() && !(r + 2.0 * delta < zeros[m + 1] - 2.0 * delta))
      throw DeltaTooLarge("make_zero_cutoffs: supports of neighbouring chi_m overlap");
    const double s0 = dP(r);
    if (s0 == 0.0) throw DeltaTooLarge("make_zero_cutoffs: zero is not simple");
    constexpr int kSamples = 400;
    for (int i = 0; i <= kSamples; ++i) {
      const double x = r - 2.0 * delta + 4.0 * delta * i / kSamples;
      const double v = dP(x);
      if (!(v * s0 > 0.0) || std::abs(v) < 1e-12)
        throw DeltaTooLarge("make_zero_cutoffs: P' vanishes on the support of chi_m");
    }
    out.chi.push_back(make_bump({r - 2.0 * delta, r + 2.0 * delta}, {r - delta, r + delta}));
  }
  return out;
}

ZeroCutoffs make_zero_cutoffs(const SymbolModel& symbol, double delta) {
  return make_zero_cutoffs(symbol.zeros, symbol.dP, delta);
}

}  // namespace blockrad
