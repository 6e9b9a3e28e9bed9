#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "blockrad/dyadic.hpp"

namespace blockrad {

// I = int int (1-s1^2)^a1 (1-s2^2)^a2 m(s) chi(Psi(s)) e^{i lambda Psi(s)} ds,
// Psi(s) = sqrt(A - B1 s1 - B2 s2), |B1| + |B2| <= A.
struct OscIntegralSpec {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double A = 1.0;
  double B1 = 0.5;
  double B2 = 0.25;
  double lambda = 1.0;
  std::function<std::complex<double>(double, double)> amplitude;  // empty means m = 1
  SmoothCutoff cutoff = make_bump({0.5, 2.0}, {1.0, 1.0});
  void validate() const;
};

struct OscOptions {
  double lambda_max = 4096.0;    // resolution budget
  double doubling_tol = 1e-4;    // allowed relative change under refinement
  double absolute_floor = 1e-13; // relative to the integral of |integrand|
  bool check = true;             // evaluate twice and compare
};

struct OscResult {
  std::complex<double> value;
  double abs_scale = 0.0;   // int |weights m chi|
  double rel_change = 0.0;  // |coarse - fine| / |fine| (0 when unchecked)
};

double osc_phase(const OscIntegralSpec& spec, double s1, double s2);

// General weighted integral int int (1-s1^2)^a1 (1-s2^2)^a2 G(s1, s2, Psi) e^{i lambda Psi} ds
// with G vanishing for Psi outside psi_support.
using PhaseAmplitude = std::function<std::complex<double>(double, double, double)>;
OscResult integrate_on_phase_lines(double alpha1, double alpha2, double A, double B1, double B2, double lambda,
                                   Interval psi_support, const PhaseAmplitude& G, const OscOptions& opt = {});

// Same integral with an amplitude depending on Psi only. B1 or B2 may vanish; soft_breaks
// are points where g is flat to all orders (cutoff transitions) and get graded panels.
OscResult integrate_radial_amplitude(double alpha1, double alpha2, double A, double B1, double B2, double lambda,
                                     Interval psi_support, const std::function<std::complex<double>(double)>& g,
                                     const std::vector<double>& soft_breaks, const OscOptions& opt = {});

// int_{-1}^{1} (1-s^2)^a ds
double jacobi_mass(double a);

OscResult eval_osc_integral_checked(const OscIntegralSpec& spec, const OscOptions& opt = {});
std::complex<double> eval_osc_integral(const OscIntegralSpec& spec, const OscOptions& opt = {});

// min{1, |lambda B1|^{-1-a1}} min{1, |lambda B2|^{-1-a2}}
double envelope(const OscIntegralSpec& spec);

struct EnvelopeRow {
  double alpha1, alpha2, A, B1, B2, lambda;
  double abs_I, envelope, ratio;
};

struct EnvelopeReport {
  std::vector<EnvelopeRow> rows;
  double calibration_lambda = 8.0;
  double c_star = 0.0;      // max ratio over |lambda| <= calibration_lambda
  double exceedance = 0.0;  // max ratio / c_star over the whole sweep
};

EnvelopeReport check_envelope(const std::vector<OscIntegralSpec>& sweep, double calibration_lambda = 8.0,
                              const OscOptions& opt = {});

// Standard sweep: fixed (A, B1, B2) triples times lambda in {2^0, ..., 2^10}.
std::vector<OscIntegralSpec> make_envelope_sweep(double alpha1, double alpha2);

// Inner integral over s2 at fixed s1, and zeta_2 from the appendix.
std::pair<std::complex<double>, double> inner_1d_bound_check(const OscIntegralSpec& spec, double s1);

// int int (1-s1^2)^a1 (1-s2^2)^a2 1{Psi <= 2} ds and min{1,|B1|^{-a1-1}} min{1,|B2|^{-a2-1}}.
std::pair<double, double> indicator_integral(double alpha1, double alpha2, double A, double B1, double B2);

void write_envelope_csv(const EnvelopeReport& report, std::ostream& out);

}  // namespace blockrad
