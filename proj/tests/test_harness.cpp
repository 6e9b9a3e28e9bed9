#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "blockrad/cli.hpp"
#include "blockrad/config.hpp"
#include "blockrad/errors.hpp"
#include "blockrad/harness.hpp"
#include "blockrad/kernels.hpp"
#include "blockrad/quadrature.hpp"
#include "blockrad/report.hpp"
#include "blockrad/specfun.hpp"
#include "doctest.h"

using namespace blockrad;

namespace {

// ||f_hat||_2 of the unnormalized spectrum by polar quadrature.
double spectrum_norm(const TestFamily& fam, double param, double rmax) {
  const Dimensions& D = fam.dims;
  const Rule rr = composite_gl(0.0, rmax, 128, 16);
  const AngularRule th = angular_rule(D, 400);
  double s = 0.0;
  for (std::size_t i = 0; i < rr.x.size(); ++i)
    for (std::size_t j = 0; j < th.size(); ++j) {
      const double v = family_spectrum(fam, param, rr.x[i] * th.c[j], rr.x[i] * th.s[j]);
      s += rr.w[i] * th.w[j] * std::pow(rr.x[i], D.d - 1) * v * v;
    }
  return std::sqrt(D.c_dk() * s);
}

// Max deviation of the restriction from spatial data from c * family_spectrum on the unit circle.
double restriction_error(const BlockRadialProfile& f, const TestFamily& fam, double param, double c, double* scale) {
  const auto res = restrict_from_spatial(f, 1.0, 256);
  double e = 0.0, m = 0.0;
  for (std::size_t j = 0; j < res.values.size(); ++j) {
    const double ex = c * family_spectrum(fam, param, res.rule.c[j], res.rule.s[j]);
    e = std::max(e, std::abs(res.values[j] - ex));
    m = std::max(m, std::abs(ex));
  }
  *scale = m;
  return e;
}

int run_cli(std::vector<std::string> args, std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int code = cli_dispatch(args, out, err);
  if (err_text) *err_text = err.str();
  return code;
}

}  // namespace

TEST_CASE("region labels for d = 4, k = 2") {
  CHECK(region_label(4, 2, 0.8, 0.3) == Region::inside);
  CHECK(region_label(4, 2, 0.7, 0.7 - 1.0 / 3) == Region::boundary);
  for (double q : {0.0, 0.2, 0.5, 1.0}) CHECK(region_label(4, 2, 0.6, q) == Region::outside);
  CHECK(region_label(4, 2, 0.9, 0.5) == Region::outside);  // 1/q' = 0.5 < 5/8
  CHECK(region_label(4, 2, 5.0 / 8, 0.1) == Region::boundary);
  CHECK(region_label(4, 2, 0.9, 3.0 / 8) == Region::boundary);
  CHECK(region_label(4, 2, 0.9, 3.0 / 8 + 1e-10) == Region::boundary);
  CHECK(region_label(4, 2, 0.9, 3.0 / 8 + 1e-8) == Region::outside);
  CHECK_THROWS_AS(region_label(4, 2, 1.2, 0.1), DomainError);
  CHECK_THROWS_AS(region_label(4, 2, Rational(3, 2), Rational(0)), DomainError);
}

TEST_CASE("pentagon corners in exact arithmetic") {
  const auto c = riesz_corners(4, 2);
  CHECK(c.A == std::make_pair(Rational(1), Rational(0)));
  CHECK(c.B == std::make_pair(Rational(1), Rational(3, 8)));
  CHECK(c.D == std::make_pair(Rational(17, 24), Rational(3, 8)));
  CHECK(c.Dp == std::make_pair(Rational(5, 8), Rational(7, 24)));
  CHECK(c.Bp == std::make_pair(Rational(5, 8), Rational(0)));
  CHECK(c.D.first - c.D.second == Rational(1, 3));
  CHECK(c.Dp.first - c.Dp.second == Rational(1, 3));
  for (const auto& v : {c.B, c.D, c.Dp, c.Bp}) CHECK(region_label(4, 2, v.first, v.second) == Region::boundary);
  CHECK(region_label(4, 2, Rational(4, 5), Rational(3, 10)) == Region::inside);
  CHECK(region_label(4, 2, Rational(3, 5), Rational(0)) == Region::outside);
  CHECK(Rational(6, -8) == Rational(-3, 4));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK_THROWS_AS(Rational(1, 0), DomainError);
}

TEST_CASE("family construction and validation") {
  TestFamily g;
  g.params = {0.8, 1.3};
  const auto fam = make_family(g);
  REQUIRE(fam.size() == 2);
  for (std::size_t i = 0; i < fam.size(); ++i) {
    CHECK(lebesgue_norm(fam[i], 2.0) == doctest::Approx(1.0).epsilon(1e-12));
    // (pi a^2)^{-d/4} normalization of e^{-|x|^2 / (2 a^2)}
    const double a = g.params[i];
    CHECK(std::abs(fam[i].at(0, 0)) == doctest::Approx(std::pow(M_PI * a * a, -1.0)).epsilon(1e-8));
  }
  TestFamily bad;
  bad.kind = FamilyKind::knapp_block;
  bad.params = {0.3};
  CHECK_THROWS_AS(make_family(bad), DomainError);
  bad.params = {0.0};
  CHECK_THROWS_AS(make_family(bad), DomainError);
  bad.params = {0.0625};
  bad.max_nodes = 1e5;
  CHECK_THROWS_AS(make_family(bad), ResolutionError);
  TestFamily r;
  r.kind = FamilyKind::random_bandlimited;
  r.params = {1.5};
  CHECK_THROWS_AS(make_family(r), DomainError);
  CHECK(parse_family_kind("knapp") == FamilyKind::knapp_block);
  CHECK_THROWS_AS(parse_family_kind("cube"), DomainError);
  CHECK(make_family(TestFamily{FamilyKind::gaussian, {4, 2}, {}}).empty());
}

TEST_CASE("sphere-constant family restricts to one") {
  TestFamily s;
  s.kind = FamilyKind::sphere_constant;
  s.params = {1.0, 0.7};
  for (const auto& f : make_family(s)) {
    const auto res = restrict_from_spatial(f, 1.0, 128);
    double e = 0.0;
    for (const auto& v : res.values) e = std::max(e, std::abs(v - 1.0));
    CHECK(e < 1e-10);
  }
  for (double t : {0.0, 0.4, 1.2}) CHECK(family_spectrum(s, 0.7, std::cos(t), std::sin(t)) == doctest::Approx(1.0));
}

TEST_CASE("family spectra match restrictions of the spatial profiles") {
  for (FamilyKind kind : {FamilyKind::gaussian, FamilyKind::random_bandlimited}) {
    TestFamily fam;
    fam.kind = kind;
    fam.params = {kind == FamilyKind::gaussian ? 1.1 : 7.0};
    const auto f = make_family(fam).front();
    double scale = 0.0;
    const double err = restriction_error(f, fam, fam.params[0], 1.0 / spectrum_norm(fam, fam.params[0], 12.0), &scale);
    CHECK(err < 1e-8 * scale);
  }
  for (int axis : {0, 1}) {
    TestFamily k;
    k.kind = FamilyKind::knapp_block;
    k.params = {0.25};
    k.axis = axis;
    const auto f = make_family(k).front();
    CHECK(lebesgue_norm(f, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
    double scale = 0.0;
    const double err = restriction_error(f, k, 0.25, 1.0 / spectrum_norm(k, 0.25, 2.0), &scale);
    CHECK(err < 1e-6 * scale);
    // the quarter-plane Hankel route on a Lobatto frequency grid
    const double c = 1.0 / spectrum_norm(k, 0.25, 2.0);
    const Grid1D fq = make_panel_grid(2.0, 128, 17);
    BlockRadialProfile fh(k.dims, fq, fq, [&](double a, double b) { return cplx(c * family_spectrum(k, 0.25, a, b)); });
    const auto alt = inverse_transform(fh, {f.grid1(), f.grid2()});
    double d = 0.0, m = 0.0;
    for (std::size_t i = 0; i < alt.values().size(); ++i) {
      d = std::max(d, std::abs(alt.values()[i] - f.values()[i]));
      m = std::max(m, std::abs(f.values()[i]));
    }
    CHECK(d < 1e-7 * m);
  }
}

TEST_CASE("random band-limited members are reproducible") {
  TestFamily r;
  r.kind = FamilyKind::random_bandlimited;
  r.params = {3, 3, 4};
  r.grid = make_panel_grid(20.0, 12, 17);
  const auto fam = make_family(r);
  CHECK(fam[0].values() == fam[1].values());
  CHECK(fam[0].values() != fam[2].values());
  CHECK(lebesgue_norm(fam[2], 2.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ball norms against closed forms") {
  // f = e^{-|x|^2} in R^4: ||f||_{L^2(B_R)}^2 / ||f||_2^2 = 1 - e^{-2R^2} (1 + 2R^2)
  TestFamily g;
  g.params = {1.0 / std::sqrt(2.0)};
  const auto f = make_family(g).front();
  const std::vector<double> R = {1.0, 2.0, 3.0, 6.0};
  const auto t = ratio_trajectory_from(f, f, 2.0, 2.0, R);
  for (std::size_t i = 0; i < R.size(); ++i) {
    const double ex = std::sqrt(1.0 - std::exp(-2 * R[i] * R[i]) * (1 + 2 * R[i] * R[i]));
    CHECK(std::abs(t.ratio[i] - ex) < 1e-2 * ex);
  }
  CHECK(t.ratio.back() == doctest::Approx(1.0).epsilon(1e-12));
  const auto sup = ratio_trajectory_from(f, f, 2.0, kInf, {1.0, 5.0});
  CHECK(sup.ratio[1] == doctest::Approx(lebesgue_norm(f, kInf)));
  const auto w = ratio_trajectory_from(f, f, 2.0, 2.0, R, true);
  for (std::size_t i = 0; i < R.size(); ++i) CHECK(w.ratio[i] <= t.ratio[i] * (1 + 1e-12));
  CHECK_THROWS_AS(ratio_trajectory_from(f, f, 2.0, 2.0, {2.0, 1.0}), DomainError);
  CHECK_THROWS_AS(ratio_trajectory_from(f, f, 2.0, 2.0, {50.0}), CoverageError);
  CHECK_THROWS_AS(ratio_trajectory_from(f, f, 0.5, 2.0, {1.0}), DomainError);
}

TEST_CASE("trend classification") {
  auto power = [](double s) {
    Trajectory t;
    for (double R : {16.0, 32.0, 64.0, 128.0}) t.R.push_back(R), t.ratio.push_back(std::pow(R, s));
    return t;
  };
  CHECK(classify(power(0.3)) == Trend::divergent);
  CHECK(trajectory_slope(power(0.3)) == doctest::Approx(0.3));
  CHECK(classify(power(0.01)) == Trend::bounded);
  CHECK(classify(power(-0.015)) == Trend::bounded);
  CHECK(classify(power(0.03)) == Trend::inconclusive);
  CHECK(classify(power(-0.1)) == Trend::inconclusive);
  Trajectory z = power(0.0);
  for (auto& v : z.ratio) v = 0.0;
  CHECK(classify(z) == Trend::bounded);
  CHECK(trend_name(Trend::bounded) == "bounded-trend");
}

TEST_CASE("sphere-constant trajectories follow the Bessel decay") {
  TestFamily s;
  s.kind = FamilyKind::sphere_constant;
  const auto f = make_family(s).front();
  const std::vector<double> R = {16, 32, 64, 128};
  for (double qi : {0.5, 0.45}) {
    const auto t = ratio_trajectory(f, 1.0, 1.0 / qi, R);
    CHECK(std::abs(trajectory_slope(t) - (4 * qi - 1.5)) < 0.15);
  }
  for (double qi : {0.3, 0.25}) {
    const auto t = ratio_trajectory(f, 1.0, 1.0 / qi, R);
    CHECK(t.ratio[3] / t.ratio[2] - 1.0 < 0.1);
  }
  const auto z = ratio_trajectory(0.0 * f, 1.0, 2.0, R);
  for (double v : z.ratio) CHECK(v == 0.0);
}

TEST_CASE("Riesz map bookkeeping") {
  TestFamily s;
  s.kind = FamilyKind::sphere_constant;
  CHECK(riesz_map(s, {}, {16, 32}).points.empty());
  std::vector<std::pair<double, double>> many(201, {0.8, 0.2});
  CHECK_THROWS_AS(riesz_map(s, many, {16, 32}), BudgetExceeded);
  const std::vector<std::pair<double, double>> grid = {{1.0, 0.5}, {0.9, 0.45}, {0.8, 0.2}};
  const auto a = riesz_map(s, grid, {16, 32, 64, 128});
  const auto b = riesz_map(s, grid, {16, 32, 64, 128});
  REQUIRE(a.points.size() == 3);
  CHECK(a.points[0].trend == Trend::divergent);
  CHECK(a.points[1].trend == Trend::divergent);
  CHECK(a.points[0].region == Region::outside);
  CHECK(a.points[2].region == Region::inside);
  CHECK(a.points[2].trend == Trend::bounded);
  for (std::size_t i = 0; i < 3; ++i) CHECK(a.points[i].trajectory.ratio == b.points[i].trajectory.ratio);
  const auto lat = interior_lattice(4, 2, 0.1);
  CHECK(!lat.empty());
  for (const auto& [p, q] : lat) CHECK(region_label(4, 2, p, q) == Region::inside);
}

TEST_CASE("Stein-Tomas ratio of a Gaussian") {
  // f = e^{-|x|^2/(2a^2)}: f_hat = a^d e^{-a^2|xi|^2/2}, ||f||_p^p = |S^{d-1}| Gamma(d/2) (2a^2/p)^{d/2} / 2
  TestFamily g;
  g.params = {1.0};
  const Dimensions D{4, 2};
  auto f = make_family(g).front();
  const double c = std::abs(f.at(0, 0));
  const double a = 1.0, p = 1.5;
  const double sl2 = surface_measure(4) * std::pow(c * std::exp(-0.5 * a * a), 2);
  const double np = c * std::pow(surface_measure(4) * std::tgamma(2.0) * std::pow(2 * a * a / p, 2.0) / 2, 1.0 / p);
  const auto r = stein_tomas_ratio(f, p);
  CHECK(r.sphere_l2 == doctest::Approx(sl2).epsilon(1e-8));
  CHECK(r.norm_p == doctest::Approx(np).epsilon(1e-8));
  CHECK(r.ratio == doctest::Approx(sl2 / (np * np)).epsilon(1e-8));
  const auto z = stein_tomas_ratio(0.0 * f, p);
  CHECK(z.degenerate);
  CHECK(z.ratio == 0.0);
  CHECK(p_stein_tomas(D) == doctest::Approx(1.5));
  CHECK(p_stein_tomas(D) > 10.0 / 7);
}

TEST_CASE("CSV round trip and SVG determinism") {
  CsvTable t{{"name", "value", "note"}, {}};
  t.add({"a", fmt_number(1.0 / 3), "plain"});
  t.add({"b,c", fmt_number(kInf), "has \"quotes\", commas"});
  t.add({"", fmt_number(-2.5e-300), "line\nbreak"});
  std::stringstream s;
  write_csv(t, s);
  const CsvTable u = read_csv(s);
  CHECK(u.columns == t.columns);
  CHECK(u.rows == t.rows);
  CHECK(u.number(0, "value") == doctest::Approx(1.0 / 3).epsilon(1e-10));
  CHECK(std::isinf(u.number(1, "value")));
  CHECK_THROWS_AS(t.add({"short"}), DomainError);
  CHECK_THROWS_AS(u.column("missing"), DomainError);

  LogLogPlot plot{"t", "x", "y", {{"s", {1, 10, 100}, {1, 0.1, 0.0}}}};
  CHECK(svg_loglog(plot) == svg_loglog(plot));
  RieszProbeReport rep;
  rep.family = "gaussian";
  rep.points.push_back({0.8, 0.2, Region::inside, {}, 0.0, Trend::bounded});
  const std::string svg = svg_riesz(rep);
  CHECK(svg == svg_riesz(rep));
  CHECK(svg.find("<polygon points=\"450,450 450,300 333.333,300 300,333.333 300,450\"") != std::string::npos);
}

TEST_CASE("configuration files") {
  std::istringstream in("# comment\nd = 5\n  family=knapp   # trailing\nradii = 16, 32 64\n\nflag = yes\nd = 6\n");
  const Config c = Config::parse(in);
  CHECK(c.get_int("d", 0) == 6);
  CHECK(c.get("family", "") == "knapp");
  CHECK(c.get_list("radii", {}) == std::vector<double>{16, 32, 64});
  CHECK(c.get_bool("flag", false));
  CHECK(c.get_double("missing", 2.5) == 2.5);
  std::istringstream bad("d 4\n");
  CHECK_THROWS_AS(Config::parse(bad), ConfigError);
  std::istringstream num("d = four\n");
  CHECK_THROWS_AS(Config::parse(num).get_int("d", 0), ConfigError);
  CHECK_THROWS_AS(Config::load("/nonexistent/blockrad.cfg"), ConfigError);
}

TEST_CASE("command line dispatch") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "blockrad_cli_test";
  fs::remove_all(dir);
  CHECK(run_cli({}) == kExitUsage);
  CHECK(run_cli({"bogus"}) == kExitUsage);
  CHECK(run_cli({"riesz-map", "--no-such-flag", "1"}) == kExitUsage);
  CHECK(run_cli({"riesz-map", "--family", "cube"}) == kExitUsage);
  CHECK(run_cli({"riesz-map", "--radii", "32,16", "--out", dir.string()}) == kExitComputation);
  CHECK(run_cli({"resolve", "--input", (dir / "missing.bin").string(), "--out", dir.string()}) == kExitComputation);

  {
    std::ofstream cfg(dir / "probe.cfg");
    cfg << "family = knapp\nparams = 0.25\nradii = 16 32 64\n";
  }
  const std::string out = (dir / "riesz").string();
  REQUIRE(run_cli({"riesz-map", "--config", (dir / "probe.cfg").string(), "--d", "4", "--k", "2", "--p-inv", "0.8",
                   "--q-inv", "0.1,0.2", "--out", out}) == kExitOk);
  const CsvTable pts = load_csv(out + "/riesz_points.csv");
  CHECK(pts.columns == std::vector<std::string>{"member", "p_inv", "q_inv", "region", "slope", "trend"});
  CHECK(pts.rows.size() == 2);
  const CsvTable traj = load_csv(out + "/riesz_trajectories.csv");
  CHECK(traj.rows.size() == 6);
  CHECK(fs::exists(out + "/riesz_map.svg"));

  const std::string res = (dir / "resolve").string();
  REQUIRE(run_cli({"resolve", "--symbol", "helmholtz", "--rmax", "24", "--panels", "12", "--out", res}) == kExitOk);
  const CsvTable man = load_csv(res + "/resolve_manifest.csv");
  CHECK(man.rows.size() == 4);
  for (std::size_t i = 0; i < man.rows.size(); ++i) CHECK(fs::exists(res + "/" + man.rows[i][man.column("file")]));
  const BlockRadialProfile u = load_profile(res + "/solution.bin");
  CHECK(u.finite());
  fs::remove_all(dir);
}
