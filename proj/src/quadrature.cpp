#include "blockrad/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace blockrad {
namespace {

struct JacobiMatrix {
  std::vector<double> diag, off;  // off[k] couples k-1 and k, off[0] unused
};

JacobiMatrix jacobi_matrix(int n, double a, double b) {
  JacobiMatrix J;
  J.diag.resize(n);
  J.off.assign(n + 1, 0.0);
  const double ab = a + b;
  for (int k = 0; k < n; ++k) {
    double t = 2.0 * k + ab;
    if (k == 0)
      J.diag[k] = (b - a) / (ab + 2.0);
    else
      J.diag[k] = (b * b - a * a) / (t * (t + 2.0));
  }
  for (int k = 1; k <= n; ++k) {
    double t = 2.0 * k + ab;
    double v;
    if (k == 1)
      v = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    else
      v = 4.0 * k * (k + a) * (k + b) * (k + ab) / (t * t * (t + 1.0) * (t - 1.0));
    J.off[k] = std::sqrt(v);
  }
  return J;
}

// Orthonormal polynomial p_n at x plus derivative and sum of p_k^2 for k < n.
struct OrthoEval {
  double p, dp, sumsq;
};

OrthoEval ortho_eval(const JacobiMatrix& J, int n, double mu0, double x) {
  double pm = 0.0, dpm = 0.0;
  double p = 1.0 / std::sqrt(mu0), dp = 0.0;
  double sumsq = 0.0;
  for (int k = 0; k < n; ++k) {
    sumsq += p * p;
    double pn = ((x - J.diag[k]) * p - J.off[k] * pm) / J.off[k + 1];
    double dpn = (p + (x - J.diag[k]) * dp - J.off[k] * dpm) / J.off[k + 1];
    pm = p;
    dpm = dp;
    p = pn;
    dp = dpn;
  }
  return {p, dp, sumsq};
}

Rule build_jacobi(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi: n must be >= 1");
  if (a <= -1.0 || b <= -1.0) throw std::invalid_argument("gauss_jacobi: exponents must exceed -1");
  JacobiMatrix J = jacobi_matrix(n, a, b);
  double mu0 = std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                        std::lgamma(a + b + 2.0));
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  if (n == 1) {
    r.x[0] = J.diag[0];
    r.w[0] = mu0;
    return r;
  }
  Eigen::VectorXd d(n), e(n - 1);
  for (int k = 0; k < n; ++k) d[k] = J.diag[k];
  for (int k = 1; k < n; ++k) e[k - 1] = J.off[k];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
  for (int i = 0; i < n; ++i) {
    double x = es.eigenvalues()[i];
    for (int it = 0; it < 3; ++it) {
      OrthoEval ev = ortho_eval(J, n, mu0, x);
      if (ev.dp == 0.0) break;
      double dx = ev.p / ev.dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    OrthoEval ev = ortho_eval(J, n, mu0, x);
    r.x[i] = x;
    r.w[i] = 1.0 / ev.sumsq;
  }
  return r;
}

Rule build_lobatto(int n) {
  if (n < 2) throw std::invalid_argument("gauss_lobatto: n must be >= 2");
  Rule r;
  r.x.push_back(-1.0);
  if (n > 2) {
    const Rule& in = gauss_jacobi(n - 2, 1.0, 1.0);
    for (double x : in.x) r.x.push_back(x);
  }
  r.x.push_back(1.0);
  const double c = 2.0 / (double(n) * (n - 1));
  for (double x : r.x) {
    // Legendre P_{n-1}(x) by recurrence
    double p0 = 1.0, p1 = x;
    for (int k = 1; k < n - 1; ++k) {
      double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
      p0 = p1;
      p1 = p2;
    }
    double p = (n == 1) ? p0 : p1;
    r.w.push_back(c / (p * p));
  }
  return r;
}

std::mutex cache_mutex;

}  // namespace

const Rule& gauss_jacobi(int n, double a, double b) {
  static std::map<std::tuple<int, double, double>, std::unique_ptr<Rule>> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto key = std::make_tuple(n, a, b);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  auto rule = std::make_unique<Rule>(build_jacobi(n, a, b));
  const Rule& ref = *rule;
  cache.emplace(key, std::move(rule));
  return ref;
}

const Rule& gauss_lobatto(int n) {
  static std::map<int, std::unique_ptr<Rule>> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;
  }
  auto rule = std::make_unique<Rule>(build_lobatto(n));  // takes the lock inside gauss_jacobi
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto [it, inserted] = cache.emplace(n, std::move(rule));
  return *it->second;
}

Rule mapped(const Rule& ref, double lo, double hi) {
  Rule r;
  const double h = 0.5 * (hi - lo), c = 0.5 * (hi + lo);
  r.x.reserve(ref.size());
  r.w.reserve(ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    r.x.push_back(c + h * ref.x[i]);
    r.w.push_back(h * ref.w[i]);
  }
  return r;
}

namespace {
void append(Rule& dst, const Rule& src) {
  dst.x.insert(dst.x.end(), src.x.begin(), src.x.end());
  dst.w.insert(dst.w.end(), src.w.begin(), src.w.end());
}
}  // namespace

Rule composite_gl(double lo, double hi, int panels, int n) {
  if (panels < 1) throw std::invalid_argument("composite_gl: panels must be >= 1");
  Rule r;
  const Rule& ref = gauss_legendre(n);
  const double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) append(r, mapped(ref, lo + p * h, p + 1 == panels ? hi : lo + (p + 1) * h));
  return r;
}

Rule graded_gl(double lo, double hi, double focus, double min_width, int n) {
  if (!(lo <= focus && focus <= hi) || min_width <= 0.0)
    throw std::invalid_argument("graded_gl: focus must lie in [lo,hi] and min_width > 0");
  std::vector<double> br{focus};
  for (double w = min_width; focus - w > lo; w *= 2.0) br.push_back(focus - w);
  for (double w = min_width; focus + w < hi; w *= 2.0) br.push_back(focus + w);
  br.push_back(lo);
  br.push_back(hi);
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  Rule r;
  const Rule& ref = gauss_legendre(n);
  for (std::size_t i = 0; i + 1 < br.size(); ++i) append(r, mapped(ref, br[i], br[i + 1]));
  return r;
}

Rule breakpoint_graded_gl(const std::vector<double>& breaks, double max_width, int n, int levels) {
  if (breaks.size() < 2 || !(max_width > 0.0)) throw std::invalid_argument("breakpoint_graded_gl: bad arguments");
  Rule r;
  const Rule& ref = gauss_legendre(n);
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double a = breaks[s], b = breaks[s + 1];
    if (!(b > a)) continue;
    const int np = std::max(1, int(std::ceil((b - a) / max_width)));
    const double h = (b - a) / np;
    for (int p = 0; p < np; ++p) {
      const double pa = a + p * h, pb = p + 1 == np ? b : a + (p + 1) * h;
      if (np == 1) {
        const double mid = 0.5 * (pa + pb);
        for (int k = 0; k < levels; ++k) {
          append(r, mapped(ref, pa + (mid - pa) * std::ldexp(1.0, -k - 1), pa + (mid - pa) * std::ldexp(1.0, -k)));
          append(r, mapped(ref, pb - (pb - mid) * std::ldexp(1.0, -k), pb - (pb - mid) * std::ldexp(1.0, -k - 1)));
        }
        append(r, mapped(ref, pa, pa + (mid - pa) * std::ldexp(1.0, -levels)));
        append(r, mapped(ref, pb - (pb - mid) * std::ldexp(1.0, -levels), pb));
      } else if (p == 0) {
        for (int k = 0; k < levels; ++k)
          append(r, mapped(ref, pa + h * std::ldexp(1.0, -k - 1), pa + h * std::ldexp(1.0, -k)));
        append(r, mapped(ref, pa, pa + h * std::ldexp(1.0, -levels)));
      } else if (p + 1 == np) {
        for (int k = 0; k < levels; ++k)
          append(r, mapped(ref, pb - h * std::ldexp(1.0, -k), pb - h * std::ldexp(1.0, -k - 1)));
        append(r, mapped(ref, pb - h * std::ldexp(1.0, -levels), pb));
      } else {
        append(r, mapped(ref, pa, pb));
      }
    }
  }
  return r;
}

Rule composite_jacobi(double a, double b, int panels, int n) {
  if (panels <= 1) return gauss_jacobi(n, a, b);
  Rule r;
  const double h = 2.0 / panels;
  const double hh = 0.5 * h;
  {
    const Rule& ref = gauss_jacobi(n, 0.0, b);
    const double scale = std::pow(hh, b + 1.0);
    for (std::size_t i = 0; i < ref.size(); ++i) {
      double s = -1.0 + hh * (1.0 + ref.x[i]);
      r.x.push_back(s);
      r.w.push_back(ref.w[i] * scale * std::pow(1.0 - s, a));
    }
  }
  const Rule& gl = gauss_legendre(n);
  for (int p = 1; p < panels - 1; ++p) {
    double lo = -1.0 + p * h;
    for (std::size_t i = 0; i < gl.size(); ++i) {
      double s = lo + hh * (1.0 + gl.x[i]);
      r.x.push_back(s);
      r.w.push_back(hh * gl.w[i] * std::pow(1.0 - s, a) * std::pow(1.0 + s, b));
    }
  }
  {
    const Rule& ref = gauss_jacobi(n, a, 0.0);
    const double scale = std::pow(hh, a + 1.0);
    for (std::size_t i = 0; i < ref.size(); ++i) {
      double s = 1.0 - hh * (1.0 - ref.x[i]);
      r.x.push_back(s);
      r.w.push_back(ref.w[i] * scale * std::pow(1.0 + s, b));
    }
  }
  return r;
}

}  // namespace blockrad
