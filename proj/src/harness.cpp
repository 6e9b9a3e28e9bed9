#include "blockrad/harness.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "blockrad/diagnostics.hpp"
#include "blockrad/errors.hpp"
#include "blockrad/kernels.hpp"
#include "blockrad/lap.hpp"
#include "blockrad/quadrature.hpp"
#include "blockrad/specfun.hpp"
#include "blockrad/transform.hpp"

namespace blockrad {

namespace {

using RMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

BlockRadialProfile normalized(BlockRadialProfile f) {
  const double n = lebesgue_norm(f, 2.0);
  if (n > 0.0) f *= 1.0 / n;
  return f;
}

// Random polynomial coefficients for 1, r1^2, r2^2, r1^4, r1^2 r2^2, r2^4; constant term kept away from 0.
std::vector<double> random_coefficients(double seed) {
  std::mt19937_64 gen(static_cast<std::uint64_t>(seed));
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(6);
  for (auto& x : c) x = u(gen);
  c[0] = 1.0 + std::abs(c[0]);
  return c;
}

double random_spectrum(const std::vector<double>& c, double r1, double r2) {
  const double a = r1 * r1, b = r2 * r2;
  return std::exp(-0.5 * (a + b)) * (c[0] + c[1] * a + c[2] * b + c[3] * a * a + c[4] * a * b + c[5] * b * b);
}

double knapp_spectrum(double delta, int axis, double r1, double r2) {
  const double r = std::hypot(r1, r2);
  const double phi = axis == 0 ? std::atan2(r2, r1) : std::atan2(r1, r2);
  const double d2 = delta * delta;
  return std::exp(-(r - 1.0) * (r - 1.0) / (2.0 * d2 * d2)) * std::exp(-phi * phi / (2.0 * d2));
}

RMat kernel_matrix(int l, const std::vector<double>& t, const Rule& r) {
  RMat K(t.size(), r.x.size());
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    const double jac = (l == 1 ? 1.0 : std::pow(r.x[i], l - 1)) * r.w[i];
    for (std::size_t a = 0; a < t.size(); ++a) K(a, i) = sphere_kernel(l, t[a] * r.x[i]) * jac;
  }
  return K;
}

// Spatial profile of the Knapp block by separable quadrature over a frequency box fitted to delta.
BlockRadialProfile knapp_profile(const TestFamily& spec, double delta) {
  const Dimensions& D = spec.dims;
  const double d2 = delta * delta;
  const double ang = std::min(6.0 * delta, M_PI / 2);
  const double lo_a = std::max(0.0, (1.0 - 6.0 * d2) * std::cos(ang));
  const double hi_a = 1.0 + 6.0 * d2;
  const double hi_b = hi_a * std::sin(ang);
  const Rule fa = composite_gl(lo_a, hi_a, std::max(1, int(std::ceil((hi_a - lo_a) / d2))), 16);
  const Rule fb = composite_gl(0.0, hi_b, std::max(1, int(std::ceil(hi_b / delta))), 16);

  // Kernel frequencies up to 1 (restriction to the unit sphere) plus the block's own frequency.
  const double width = 6.4 / std::max(1.0, hi_a);
  const double ta = 6.0 / d2, tb = 12.0 / delta;
  const int pa = int(std::ceil(ta / width)), pb = std::max(2, int(std::ceil(tb / width)));
  const double nodes = double(16 * pa + 1) * double(16 * pb + 1);
  if (nodes > spec.max_nodes) {
    std::ostringstream m;
    m << "knapp_block: delta = " << delta << " needs " << nodes << " spatial nodes (budget " << spec.max_nodes << ")";
    throw ResolutionError(m.str());
  }
  const Grid1D ga = make_panel_grid(pa * width, pa, 17);
  const Grid1D gb = make_panel_grid(pb * width, pb, 17);

  const int la = spec.axis == 0 ? D.dy() : D.dz();
  const int lb = spec.axis == 0 ? D.dz() : D.dy();
  RMat F(fa.x.size(), fb.x.size());
  for (std::size_t i = 0; i < fa.x.size(); ++i)
    for (std::size_t j = 0; j < fb.x.size(); ++j) {
      const double r1 = spec.axis == 0 ? fa.x[i] : fb.x[j];
      const double r2 = spec.axis == 0 ? fb.x[j] : fa.x[i];
      F(i, j) = knapp_spectrum(delta, spec.axis, r1, r2);
    }
  const RMat Ka = kernel_matrix(la, ga.x, fa);
  const RMat Kb = kernel_matrix(lb, gb.x, fb);
  const RMat V = Ka * (F * Kb.transpose());  // (n_a, n_b)

  BlockRadialProfile f = spec.axis == 0 ? BlockRadialProfile(D, ga, gb) : BlockRadialProfile(D, gb, ga);
  for (std::size_t i = 0; i < ga.size(); ++i)
    for (std::size_t j = 0; j < gb.size(); ++j) {
      if (spec.axis == 0)
        f.at(i, j) = V(i, j);
      else
        f.at(j, i) = V(i, j);
    }
  return normalized(std::move(f));
}

BlockRadialProfile random_profile(const TestFamily& spec, const Grid1D& g, double seed) {
  const auto c = random_coefficients(seed);
  const Grid1D fq = resolved_frequency_grid(g, g.rmax());
  BlockRadialProfile fhat(spec.dims, fq, fq, [&](double a, double b) { return cplx(random_spectrum(c, a, b)); });
  return normalized(inverse_transform(fhat, {g, g}));
}

}  // namespace

FamilyKind parse_family_kind(const std::string& name) {
  if (name == "gaussian") return FamilyKind::gaussian;
  if (name == "sphere_constant" || name == "sphere-constant") return FamilyKind::sphere_constant;
  if (name == "knapp_block" || name == "knapp-block" || name == "knapp") return FamilyKind::knapp_block;
  if (name == "random_bandlimited" || name == "random-bandlimited" || name == "random")
    return FamilyKind::random_bandlimited;
  throw DomainError("unknown family: " + name);
}

std::string family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::gaussian: return "gaussian";
    case FamilyKind::sphere_constant: return "sphere_constant";
    case FamilyKind::knapp_block: return "knapp_block";
    case FamilyKind::random_bandlimited: return "random_bandlimited";
  }
  return "?";
}

void TestFamily::validate() const {
  dims.validate();
  if (axis != 0 && axis != 1) throw DomainError("TestFamily: axis must be 0 or 1");
  for (double p : params) {
    if (!std::isfinite(p)) throw DomainError("TestFamily: non-finite parameter");
    switch (kind) {
      case FamilyKind::gaussian:
      case FamilyKind::sphere_constant:
        if (!(p > 0.0)) throw DomainError("TestFamily: width must be positive");
        break;
      case FamilyKind::knapp_block:
        if (!(p > 0.0 && p <= 0.25)) throw DomainError("TestFamily: knapp delta must lie in (0, 1/4]");
        break;
      case FamilyKind::random_bandlimited:
        if (p < 0.0 || p != std::floor(p)) throw DomainError("TestFamily: seed must be a nonnegative integer");
        break;
    }
  }
  if (grid && grid->size() < 2) throw DomainError("TestFamily: grid too small");
}

std::vector<BlockRadialProfile> make_family(const TestFamily& spec) {
  spec.validate();
  const Grid1D g = spec.grid ? *spec.grid : default_grid();
  const int d = spec.dims.d;
  std::vector<BlockRadialProfile> out;
  for (double a : spec.params) {
    switch (spec.kind) {
      case FamilyKind::gaussian: {
        const double s = 1.0 / (2.0 * a * a);
        out.push_back(normalized(BlockRadialProfile(spec.dims, g, g, [s](double x, double y) {
          return cplx(std::exp(-s * (x * x + y * y)));
        })));
        break;
      }
      case FamilyKind::sphere_constant: {
        const double c = std::exp(0.5 * a * a) * std::pow(a, -d), s = 1.0 / (2.0 * a * a);
        out.emplace_back(spec.dims, g, g, [c, s](double x, double y) { return cplx(c * std::exp(-s * (x * x + y * y))); });
        break;
      }
      case FamilyKind::knapp_block: out.push_back(knapp_profile(spec, a)); break;
      case FamilyKind::random_bandlimited: out.push_back(random_profile(spec, g, a)); break;
    }
  }
  return out;
}

double family_spectrum(const TestFamily& spec, double param, double r1, double r2) {
  const double rr = r1 * r1 + r2 * r2;
  switch (spec.kind) {
    case FamilyKind::gaussian: return std::pow(param, spec.dims.d) * std::exp(-0.5 * param * param * rr);
    case FamilyKind::sphere_constant: return std::exp(0.5 * param * param * (1.0 - rr));
    case FamilyKind::knapp_block: return knapp_spectrum(param, spec.axis, r1, r2);
    case FamilyKind::random_bandlimited: return random_spectrum(random_coefficients(param), r1, r2);
  }
  return 0.0;
}

// ---------------------------------------------------------------------------------------------
// Region bookkeeping

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw DomainError("Rational: zero denominator");
  if (d < 0) n = -n, d = -d;
  const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  num = g ? n / g : 0;
  den = g ? d / g : 1;
}

Rational operator+(Rational a, Rational b) { return Rational(a.num * b.den + b.num * a.den, a.den * b.den); }
Rational operator-(Rational a, Rational b) { return Rational(a.num * b.den - b.num * a.den, a.den * b.den); }
bool operator<(const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; }

std::string region_name(Region r) {
  switch (r) {
    case Region::inside: return "inside";
    case Region::boundary: return "boundary";
    case Region::outside: return "outside";
  }
  return "?";
}

namespace {

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError(std::string("region_label: ") + what + " must lie in [0, 1]");
}

}  // namespace

Region region_label(int d, int k, double p_inv, double q_inv, double tol) {
  Dimensions D{d, k};
  D.validate();
  check_unit(p_inv, "1/p");
  check_unit(q_inv, "1/q");
  const double edge = (d + 1.0) / (2.0 * d);
  const double line = 2.0 / (d + D.m());
  const double s[3] = {p_inv - edge, (1.0 - q_inv) - edge, p_inv - q_inv - line};
  bool near = false;
  for (double x : s) {
    if (x < -tol) return Region::outside;
    if (x <= tol) near = true;
  }
  return near ? Region::boundary : Region::inside;
}

Region region_label(int d, int k, Rational p_inv, Rational q_inv) {
  Dimensions D{d, k};
  D.validate();
  const Rational zero(0), one(1);
  if (p_inv < zero || one < p_inv || q_inv < zero || one < q_inv)
    throw DomainError("region_label: exponents must lie in [0, 1]");
  const Rational edge(d + 1, 2 * d), line(2, d + D.m());
  const Rational s[3] = {p_inv - edge, (one - q_inv) - edge, p_inv - q_inv - line};
  bool on = false;
  for (const auto& x : s) {
    if (x < zero) return Region::outside;
    if (x == zero) on = true;
  }
  return on ? Region::boundary : Region::inside;
}

RieszCorners riesz_corners(int d, int k) {
  Dimensions D{d, k};
  D.validate();
  const Rational one(1), zero(0), lo(d - 1, 2 * d), hi(d + 1, 2 * d), line(2, d + D.m());
  RieszCorners c;
  c.A = {one, zero};
  c.B = {one, lo};
  c.D = {lo + line, lo};
  c.Dp = {hi, hi - line};
  c.Bp = {hi, zero};
  if (c.Dp.second < zero || one < c.D.first) throw DomainError("riesz_corners: degenerate region");
  return c;
}

// ---------------------------------------------------------------------------------------------
// Trajectories

namespace {

// Node values and measures sorted by distance from the origin.
class BallNorms {
 public:
  explicit BallNorms(const BlockRadialProfile& u) {
    const std::size_t n = u.n1() * u.n2();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<double> rad(n);
    for (std::size_t i = 0; i < u.n1(); ++i)
      for (std::size_t j = 0; j < u.n2(); ++j) rad[i * u.n2() + j] = std::hypot(u.grid1().x[i], u.grid2().x[j]);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return rad[a] < rad[b]; });
    r_.reserve(n), a_.reserve(n), mu_.reserve(n);
    for (std::size_t t : idx) {
      r_.push_back(rad[t]);
      a_.push_back(std::abs(u.values()[t]));
      mu_.push_back(u.measure(t / u.n2(), t % u.n2()));
    }
    reach_ = std::min(u.grid1().rmax(), u.grid2().rmax());
  }

  double reach() const { return reach_; }

  std::vector<double> strong(double q, const std::vector<double>& R) const {
    std::vector<double> out;
    std::size_t i = 0;
    double acc = 0.0;
    for (double r : R) {
      for (; i < r_.size() && r_[i] <= r; ++i)
        acc = std::isinf(q) ? std::max(acc, a_[i]) : acc + mu_[i] * std::pow(a_[i], q);
      out.push_back(std::isinf(q) ? acc : std::pow(acc, 1.0 / q));
    }
    return out;
  }

  std::vector<double> weak(double q, const std::vector<double>& R) const {
    std::vector<double> out;
    for (double r : R) {
      const std::size_t n = std::upper_bound(r_.begin(), r_.end(), r) - r_.begin();
      out.push_back(lorentz_from_samples(std::vector<double>(a_.begin(), a_.begin() + n),
                                         std::vector<double>(mu_.begin(), mu_.begin() + n), weak_lorentz(q)));
    }
    return out;
  }

 private:
  std::vector<double> r_, a_, mu_;
  double reach_ = 0.0;
};

void check_ladder(const std::vector<double>& R, double reach) {
  for (std::size_t i = 0; i < R.size(); ++i) {
    if (!(R[i] > 0.0)) throw DomainError("ratio_trajectory: radii must be positive");
    if (i && !(R[i] > R[i - 1])) throw DomainError("ratio_trajectory: radius ladder must increase");
  }
  if (!R.empty() && R.back() > reach * (1 + 1e-12)) throw CoverageError("ratio_trajectory: largest radius exceeds the grid");
}

double inverse_exponent(double e) { return e == 0.0 ? kInf : 1.0 / e; }

double source_norm(const BlockRadialProfile& f, double p, bool lorentz) {
  if (lorentz && std::isfinite(p) && p > 1.0) return lorentz_norm(f, strong_lorentz(p));
  return lebesgue_norm(f, p);
}

Trajectory assemble(const BallNorms& b, double fnorm, double p, double q, const std::vector<double>& R, bool lorentz) {
  Trajectory t;
  t.p = p, t.q = q, t.R = R;
  const auto num = (lorentz && std::isfinite(q)) ? b.weak(q, R) : b.strong(q, R);
  for (double v : num) t.ratio.push_back(fnorm > 0.0 ? v / fnorm : 0.0);
  return t;
}

BlockRadialProfile apply_op(const BlockRadialProfile& f, double rmax, const TrajectoryOptions& opt) {
  if (!(opt.panel_width > 0.0)) throw DomainError("ratio_trajectory: panel width must be positive");
  const int panels = std::max(1, int(std::ceil(rmax / opt.panel_width - 1e-9)));
  const Grid1D g = make_panel_grid(panels * opt.panel_width, panels, 17);
  if (opt.op == TrajectoryOp::extend) return extend(f, {g, g});
  ResolveOptions ro;
  ro.out1 = g, ro.out2 = g;
  return resolve(f, parse_symbol(opt.symbol), ro).profile;
}

}  // namespace

Trajectory ratio_trajectory_from(const BlockRadialProfile& f, const BlockRadialProfile& opf, double p, double q,
                                 const std::vector<double>& R, bool lorentz) {
  if (!(p >= 1.0) || !(q >= 1.0)) throw DomainError("ratio_trajectory: exponents must be >= 1");
  const BallNorms b(opf);
  check_ladder(R, b.reach());
  return assemble(b, source_norm(f, p, lorentz), p, q, R, lorentz);
}

Trajectory ratio_trajectory(const BlockRadialProfile& f, double p, double q, const std::vector<double>& R,
                            const TrajectoryOptions& opt) {
  if (!(p >= 1.0) || !(q >= 1.0)) throw DomainError("ratio_trajectory: exponents must be >= 1");
  check_ladder(R, kInf);
  if (R.empty()) return Trajectory{p, q, {}, {}};
  return ratio_trajectory_from(f, apply_op(f, R.back(), opt), p, q, R, opt.lorentz);
}

std::string trend_name(Trend t) {
  switch (t) {
    case Trend::bounded: return "bounded-trend";
    case Trend::divergent: return "divergent-trend";
    case Trend::inconclusive: return "inconclusive";
  }
  return "?";
}

double trajectory_slope(const Trajectory& t) {
  const std::size_t n = t.R.size();
  if (n < 2) return std::nan("");
  const std::size_t first = n >= 3 ? n - 3 : 0;
  bool all_zero = true, any_zero = false;
  for (std::size_t i = first; i < n; ++i) {
    if (t.ratio[i] > 0.0) all_zero = false;
    else any_zero = true;
  }
  if (all_zero) return 0.0;
  if (any_zero) return std::nan("");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = double(n - first);
  for (std::size_t i = first; i < n; ++i) {
    const double x = std::log(t.R[i]), y = std::log(t.ratio[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

Trend classify(const Trajectory& t) {
  const double s = trajectory_slope(t);
  if (std::isnan(s)) return Trend::inconclusive;
  if (s > 0.05) return Trend::divergent;
  if (std::abs(s) <= 0.02) return Trend::bounded;
  return Trend::inconclusive;
}

RieszProbeReport riesz_map(const TestFamily& family, const std::vector<std::pair<double, double>>& grid,
                           const std::vector<double>& R, const TrajectoryOptions& opt) {
  if (grid.size() > 200) throw BudgetExceeded("riesz_map: at most 200 grid points");
  RieszProbeReport rep;
  rep.d = family.dims.d, rep.k = family.dims.k;
  rep.family = family_name(family.kind);
  if (grid.empty()) return rep;
  std::vector<Region> labels;
  for (const auto& [pi, qi] : grid) labels.push_back(region_label(rep.d, rep.k, pi, qi));
  check_ladder(R, kInf);
  if (R.empty()) throw DomainError("riesz_map: empty radius ladder");
  for (const auto& f : make_family(family)) {
    const BallNorms b(apply_op(f, R.back(), opt));
    check_ladder(R, b.reach());
    for (std::size_t g = 0; g < grid.size(); ++g) {
      RieszPoint pt;
      pt.p_inv = grid[g].first, pt.q_inv = grid[g].second;
      pt.region = labels[g];
      const double p = inverse_exponent(pt.p_inv), q = inverse_exponent(pt.q_inv);
      pt.trajectory = assemble(b, source_norm(f, p, opt.lorentz), p, q, R, opt.lorentz);
      pt.slope = trajectory_slope(pt.trajectory);
      pt.trend = classify(pt.trajectory);
      rep.points.push_back(std::move(pt));
    }
  }
  return rep;
}

std::vector<std::pair<double, double>> interior_lattice(int d, int k, double step) {
  if (!(step > 0.0 && step <= 1.0)) throw DomainError("interior_lattice: step must lie in (0, 1]");
  const int n = int(std::floor(1.0 / step + 1e-9));
  std::vector<std::pair<double, double>> out;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const double pi = i * step, qi = j * step;
      if (region_label(d, k, pi, qi) == Region::inside) out.emplace_back(pi, qi);
    }
  return out;
}

SteinTomasResult stein_tomas_ratio(const BlockRadialProfile& f, double p, int n_theta) {
  SteinTomasResult r;
  r.norm_p = lebesgue_norm(f, p);
  if (r.norm_p == 0.0) {
    r.degenerate = true;
    return r;
  }
  if (n_theta > 0) {
    r.sphere_l2 = sphere_l2(restrict_from_spatial(f, 1.0, n_theta));
  } else {
    double prev = sphere_l2(restrict_from_spatial(f, 1.0, 64));
    bool settled = false;
    for (int n = 128; n <= 4096; n *= 2) {
      r.sphere_l2 = sphere_l2(restrict_from_spatial(f, 1.0, n));
      if (std::abs(r.sphere_l2 - prev) <= 1e-8 * std::abs(r.sphere_l2)) {
        settled = true;
        break;
      }
      prev = r.sphere_l2;
    }
    if (!settled) warn("stein_tomas_ratio: angular refinement did not settle");
  }
  r.ratio = r.sphere_l2 / (r.norm_p * r.norm_p);
  return r;
}

}  // namespace blockrad
