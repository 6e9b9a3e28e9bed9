#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace blockrad {

struct SymbolModel;

// Closed interval; infinite ends are allowed.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return lo <= x && x <= hi; }
  double width() const { return hi - lo; }
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// g(t) = exp(-1/(1-t^2)) on (-1,1), zero elsewhere, and its derivatives.
double bump_g(double t);
double bump_g_derivative(int n, double t);

// Smooth monotone step: 0 for t <= 0, 1 for t >= 1, normalized antiderivative of g
// rescaled to [0,1]. Derivatives up to order 8.
double smooth_step(double t);
double smooth_step_derivative(int n, double t);

inline constexpr int kMaxDerivative = 8;

// C-infinity cutoff equal to 1 on the plateau and 0 outside the support, built as the
// product of a rising step on [support.lo, plateau.lo] and a falling step on
// [plateau.hi, support.hi]. An infinite support end removes the corresponding step.
class SmoothCutoff {
 public:
  SmoothCutoff() = default;
  SmoothCutoff(Interval support, Interval plateau);

  double operator()(double x) const;
  double derivative(int order, double x) const;

  const Interval& support() const { return support_; }
  const Interval& plateau() const { return plateau_; }

 private:
  double rise(int n, double x) const;
  double fall(int n, double x) const;

  Interval support_{-kInf, kInf};
  Interval plateau_{-kInf, kInf};
};

SmoothCutoff make_bump(Interval support, Interval plateau);

// The annulus cutoff tau: 1 on [3/4, 5/4], supported in [1/2, 3/2].
SmoothCutoff make_tau();

// Dyadic family: chi0(z) + sum_{j>=1} chi(2^{-j} z) = 1 for z >= 0.
// chi(z) = H(z) - H(z/2) with H = 0 on [0,1/2], H = 1 on [1,inf); chi0 = 1 - H(z/2).
struct RadialCutoffFamily {
  SmoothCutoff chi0;
  SmoothCutoff chi;
  int j_max = 1;

  double term(int j, double z) const { return j == 0 ? chi0(z) : chi(std::ldexp(z, -j)); }
  double sum(double z) const;
};

RadialCutoffFamily make_partition(int j_max);

// Zero-localizing cutoffs chi_m (1 on |r - r_m| <= delta, supported in |r - r_m| <= 2 delta)
// and the complement chi0 = 1 - sum chi_m.
struct ZeroCutoffs {
  std::vector<double> zeros;
  std::vector<SmoothCutoff> chi;
  double delta = 0.0;

  double complement(double r) const;
};

// Default half-width min(r_1, smallest gap between zeros) / 4.
double default_zero_delta(const std::vector<double>& zeros);

ZeroCutoffs make_zero_cutoffs(const std::vector<double>& zeros, const std::function<double(double)>& dP,
                              double delta);
ZeroCutoffs make_zero_cutoffs(const SymbolModel& symbol, double delta);

}  // namespace blockrad
