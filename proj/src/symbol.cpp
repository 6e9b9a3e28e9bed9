#include "blockrad/symbol.hpp"

#include <cmath>
#include <sstream>

#include "blockrad/errors.hpp"

namespace blockrad {

std::vector<double> find_zeros(const std::function<double(double)>& P, const std::function<double(double)>& dP,
                               double r_max) {
  std::vector<double> zeros;
  // Log-spaced scan from 1e-6 to r_max.
  constexpr int kSamples = 20000;
  const double lo = std::log(1e-6), hi = std::log(r_max);
  double a = std::exp(lo), fa = P(a);
  for (int i = 1; i <= kSamples; ++i) {
    const double b = std::exp(lo + (hi - lo) * i / kSamples);
    const double fb = P(b);
    if (fb == 0.0) {
      zeros.push_back(b);
    } else if (fa * fb < 0.0) {
      double x0 = a, x1 = b, f0 = fa;
      for (int it = 0; it < 200 && x1 - x0 > 1e-15 * x1; ++it) {
        const double m = 0.5 * (x0 + x1), fm = P(m);
        if (fm == 0.0) {
          x0 = x1 = m;
          break;
        }
        if (f0 * fm < 0.0) {
          x1 = m;
        } else {
          x0 = m;
          f0 = fm;
        }
      }
      double x = 0.5 * (x0 + x1);
      for (int it = 0; it < 5; ++it) {
        const double d = dP(x);
        if (d == 0.0) break;
        const double step = P(x) / d;
        if (std::abs(step) > (b - a)) break;
        x -= step;
      }
      zeros.push_back(x);
    }
    a = b;
    fa = fb;
  }
  return zeros;
}

SymbolModel make_symbol(std::string name, std::function<double(double)> P, std::function<double(double)> dP,
                        double order, double delta) {
  SymbolModel s;
  s.name = std::move(name);
  s.P = std::move(P);
  s.dP = std::move(dP);
  s.order = order;
  if (s.P(0.0) == 0.0) throw ValidationError("symbol: P(0) must be nonzero");
  s.zeros = find_zeros(s.P, s.dP);
  s.delta = delta > 0.0 ? delta : default_zero_delta(s.zeros);
  s.cutoffs = make_zero_cutoffs(s.zeros, s.dP, s.delta);
  return s;
}

SymbolModel helmholtz_symbol(double delta) {
  return make_symbol("helmholtz", [](double r) { return r * r - 1.0; }, [](double r) { return 2.0 * r; }, 2.0, delta);
}

SymbolModel fractional_symbol(double s, double delta) {
  if (!(s > 0.0)) throw DomainError("fractional symbol: s must be positive");
  return make_symbol(
      "fractional " + std::to_string(s), [s](double r) { return std::pow(r, s) - 1.0; },
      [s](double r) { return r > 0.0 ? s * std::pow(r, s - 1.0) : 0.0; }, s, delta);
}

SymbolModel relativistic_symbol(double mu, double Lambda, double s, double delta) {
  if (!(mu > 0.0 && Lambda > 0.0 && s > 0.0)) throw DomainError("relativistic symbol: parameters must be positive");
  return make_symbol(
      "relativistic", [=](double r) { return std::pow(mu + r * r, 0.5 * s) - Lambda; },
      [=](double r) { return s * r * std::pow(mu + r * r, 0.5 * s - 1.0); }, s, delta);
}

SymbolModel polynomial_symbol(const std::vector<double>& coeffs, double delta) {
  if (coeffs.empty()) throw DomainError("polynomial symbol: no coefficients");
  std::size_t deg = coeffs.size() - 1;
  while (deg > 0 && coeffs[deg] == 0.0) --deg;
  auto P = [coeffs](double r) {
    double v = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * r + coeffs[i];
    return v;
  };
  auto dP = [coeffs](double r) {
    double v = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 1;) v = v * r + double(i) * coeffs[i];
    return v;
  };
  return make_symbol("polynomial", P, dP, double(deg), delta);
}

SymbolModel parse_symbol(const std::string& spec, double delta) {
  std::istringstream in(spec);
  std::string kind;
  in >> kind;
  std::vector<double> args;
  for (double v; in >> v;) args.push_back(v);
  if (kind == "helmholtz" && args.empty()) return helmholtz_symbol(delta);
  if (kind == "fractional" && args.size() == 1) return fractional_symbol(args[0], delta);
  if (kind == "relativistic" && args.size() == 3) return relativistic_symbol(args[0], args[1], args[2], delta);
  if (kind == "polynomial" && !args.empty()) return polynomial_symbol(args, delta);
  throw DomainError("unrecognized symbol specification: '" + spec + "'");
}

}  // namespace blockrad
