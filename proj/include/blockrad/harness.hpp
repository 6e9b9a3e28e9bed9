#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blockrad/profile.hpp"
#include "blockrad/symbol.hpp"

namespace blockrad {

enum class FamilyKind { gaussian, sphere_constant, knapp_block, random_bandlimited };

FamilyKind parse_family_kind(const std::string& name);
std::string family_name(FamilyKind kind);

// One profile per entry of params:
//   gaussian            widths a: f = e^{-|x|^2 / (2a^2)}, normalized in L^2
//   sphere_constant     widths a: f_hat = e^{a^2 (1 - |xi|^2) / 2}, equal to 1 on the unit sphere (not normalized)
//   knapp_block         deltas in (0, 1/4]: f_hat0 = e^{-(r-1)^2 / (2 delta^4)} e^{-phi^2 / (2 delta^2)}, phi the
//                       angle to the block axis; the grid is chosen per delta; normalized in L^2
//   random_bandlimited  seeds: f_hat0 = e^{-|xi|^2/2} times a random polynomial in r1^2, r2^2; normalized
struct TestFamily {
  FamilyKind kind = FamilyKind::gaussian;
  Dimensions dims{4, 2};
  std::vector<double> params{1.0};
  int axis = 0;                     // knapp_block: 0 = y-block axis (phi = theta), 1 = z-block axis
  std::optional<Grid1D> grid;       // spatial grid for all kinds but knapp_block
  double max_nodes = 1.6e7;         // knapp_block grid budget (n1 n2)
  void validate() const;
};

std::vector<BlockRadialProfile> make_family(const TestFamily& spec);

// Frequency-side definition of the family (f_hat0 at (r1, r2)), for oracles.
double family_spectrum(const TestFamily& spec, double param, double r1, double r2);

// Exact rationals for region bookkeeping.
struct Rational {
  std::int64_t num = 0, den = 1;
  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);
  double value() const { return double(num) / double(den); }
  friend Rational operator+(Rational a, Rational b);
  friend Rational operator-(Rational a, Rational b);
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend bool operator<(const Rational& a, const Rational& b);
};

enum class Region { inside, boundary, outside };
std::string region_name(Region r);

// inside iff min{1/p, 1/q'} > (d+1)/(2d) and 1/p - 1/q >= 2/(d+m); boundary within tol of either
// constraint line; outside otherwise.
Region region_label(int d, int k, double p_inv, double q_inv, double tol = 1e-9);
Region region_label(int d, int k, Rational p_inv, Rational q_inv);

struct RieszCorners {
  // A = (1, 0), B = (1, (d-1)/(2d)), D on 1/q = (d-1)/(2d), D' on 1/p = (d+1)/(2d), B' = ((d+1)/(2d), 0)
  std::pair<Rational, Rational> A, B, D, Dp, Bp;
};
RieszCorners riesz_corners(int d, int k);

enum class TrajectoryOp { extend, resolve };

struct TrajectoryOptions {
  TrajectoryOp op = TrajectoryOp::extend;
  std::string symbol = "helmholtz";  // for resolve
  bool lorentz = false;              // weak L^{q,inf} over strong L^{p,1}
  double panel_width = 4.0;          // output grid: 17-node Lobatto panels of this width
};

struct Trajectory {
  double p = 2, q = 2;
  std::vector<double> R, ratio;
};

// ||op f||_{L^q(|x| <= R)} / ||f||_{L^p} for each R.
Trajectory ratio_trajectory(const BlockRadialProfile& f, double p, double q, const std::vector<double>& R,
                            const TrajectoryOptions& opt = {});

// Same from a precomputed op f; p or q may be infinite.
Trajectory ratio_trajectory_from(const BlockRadialProfile& f, const BlockRadialProfile& opf, double p, double q,
                                 const std::vector<double>& R, bool lorentz = false);

enum class Trend { bounded, divergent, inconclusive };
std::string trend_name(Trend t);

// Log-log slope over the last three R: divergent above 0.05, bounded within +-0.02.
double trajectory_slope(const Trajectory& t);
Trend classify(const Trajectory& t);

struct RieszPoint {
  double p_inv, q_inv;
  Region region;
  Trajectory trajectory;
  double slope = 0.0;
  Trend trend = Trend::inconclusive;
};

struct RieszProbeReport {
  int d = 4, k = 2;
  std::string family;
  std::vector<RieszPoint> points;  // one per (grid point, family member)
};

// At most 200 grid points.
RieszProbeReport riesz_map(const TestFamily& family, const std::vector<std::pair<double, double>>& grid,
                           const std::vector<double>& R, const TrajectoryOptions& opt = {});

// Interior lattice points of the region on a uniform step (for default probes).
std::vector<std::pair<double, double>> interior_lattice(int d, int k, double step);

struct SteinTomasResult {
  double ratio = 0.0;
  double sphere_l2 = 0.0;
  double norm_p = 0.0;
  bool degenerate = false;  // f = 0
};

// int_S |f_hat|^2 dsigma / ||f||_p^2, with the restriction evaluated from the spatial profile.
SteinTomasResult stein_tomas_ratio(const BlockRadialProfile& f, double p, int n_theta = 0);

}  // namespace blockrad
