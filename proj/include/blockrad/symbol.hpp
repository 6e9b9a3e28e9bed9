#pragma once

#include <functional>
#include <string>
#include <vector>

#include "blockrad/dyadic.hpp"

namespace blockrad {

// Elliptic radial symbol P with simple positive zeros r_1 < ... < r_M.
struct SymbolModel {
  std::string name;
  std::function<double(double)> P;
  std::function<double(double)> dP;
  double order = 2.0;  // P(r) ~ r^order as r -> infinity
  std::vector<double> zeros;
  double delta = 0.0;
  ZeroCutoffs cutoffs;
};

// Sign changes of P on (0, r_max], located by bisection and refined by Newton.
std::vector<double> find_zeros(const std::function<double(double)>& P, const std::function<double(double)>& dP,
                               double r_max = 1e3);

// Builds a symbol: locates zeros and attaches zero cutoffs (delta <= 0 selects the default).
SymbolModel make_symbol(std::string name, std::function<double(double)> P, std::function<double(double)> dP,
                        double order, double delta = 0.0);

SymbolModel helmholtz_symbol(double delta = 0.0);                 // r^2 - 1
SymbolModel fractional_symbol(double s, double delta = 0.0);      // r^s - 1
SymbolModel relativistic_symbol(double mu, double Lambda, double s, double delta = 0.0);  // (mu + r^2)^{s/2} - Lambda
SymbolModel polynomial_symbol(const std::vector<double>& coeffs, double delta = 0.0);     // sum c_i r^i

// Parses "helmholtz", "fractional <s>", "relativistic <mu> <Lambda> <s>", "polynomial <c0> <c1> ...".
SymbolModel parse_symbol(const std::string& spec, double delta = 0.0);

}  // namespace blockrad
