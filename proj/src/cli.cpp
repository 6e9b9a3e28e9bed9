#include "blockrad/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>

#include "blockrad/config.hpp"
#include "blockrad/errors.hpp"
#include "blockrad/harness.hpp"
#include "blockrad/kernels.hpp"
#include "blockrad/lap.hpp"
#include "blockrad/oscint.hpp"
#include "blockrad/report.hpp"

namespace blockrad {

namespace {

namespace fs = std::filesystem;

struct Context {
  Config cfg;
  fs::path out;
  std::ostream* log;
};

std::vector<std::string> nums(std::initializer_list<double> v) {
  std::vector<std::string> s;
  for (double x : v) s.push_back(fmt_number(x));
  return s;
}

Dimensions dims_of(const Config& c, int d = 4, int k = 2) {
  Dimensions D{c.get_int("d", d), c.get_int("k", k)};
  try {
    D.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return D;
}

FamilyKind family_of(const Config& c, const std::string& fallback) {
  try {
    return parse_family_kind(c.get("family", fallback));
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

Grid1D grid_of(const Config& c) {
  const double rmax = c.get_double("rmax", 40.0);
  const int panels = c.get_int("panels", 24);
  if (!(rmax > 0.0) || panels < 1) throw ConfigError("rmax and panels must be positive");
  return make_panel_grid(rmax, panels, 17);
}

TestFamily family_spec(const Config& c, const std::string& kind, std::vector<double> params) {
  TestFamily t;
  t.kind = family_of(c, kind);
  t.dims = dims_of(c);
  t.params = c.get_list("params", params);
  t.axis = c.get_int("axis", 0);
  if (t.kind != FamilyKind::knapp_block) t.grid = grid_of(c);
  try {
    t.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return t;
}

// Input profile from --input, or the first member of the configured family.
BlockRadialProfile input_profile(const Config& c) {
  if (c.has("input")) return load_profile(c.get("input", ""));
  return make_family(family_spec(c, "gaussian", {1.0})).front();
}

void emit(const Context& cx, const std::string& name, const CsvTable& t) {
  save_csv(t, (cx.out / name).string());
  *cx.log << "wrote " << (cx.out / name).string() << "\n";
}

void emit_svg(const Context& cx, const std::string& name, const std::string& svg) {
  save_text_file((cx.out / name).string(), svg);
  *cx.log << "wrote " << (cx.out / name).string() << "\n";
}

std::vector<double> axis_cut(const BlockRadialProfile& f, std::vector<double>& r) {
  std::vector<double> v;
  r = f.grid1().x;
  for (std::size_t i = 0; i < f.n1(); ++i) v.push_back(std::abs(f.at(i, 0)));
  return v;
}

std::vector<int> j_range(const Config& c) {
  const int jmax = c.get_int("j_max", 6);
  if (jmax < 1 || jmax > 12) throw ConfigError("j_max must lie in [1, 12]");
  std::vector<int> js;
  for (int j = 1; j <= jmax; ++j) js.push_back(j);
  return js;
}

// ---------------------------------------------------------------------------------------------

void run_kernel_bounds(const Context& cx) {
  const Config& c = cx.cfg;
  const Dimensions D = dims_of(c);
  const int count = c.get_int("points", 250);
  if (count < 1) throw ConfigError("points must be positive");
  const auto rep = check_Kj_bound(D, j_range(c), make_kj_sweep(count, unsigned(c.get_int("seed", 12345))),
                                  c.get_int("fit_j", 2));
  CsvTable t{{"j", "t1", "t2", "rho1", "rho2", "value", "bound", "ratio"}, {}};
  std::map<int, double> worst;
  for (const auto& r : rep.rows) {
    t.add(nums({double(r.j), r.t1, r.t2, r.rho1, r.rho2, r.value, r.bound, r.ratio}));
    worst[r.j] = std::max(worst[r.j], r.ratio);
  }
  emit(cx, "kernel_bounds.csv", t);
  emit(cx, "kernel_bounds_summary.csv",
       CsvTable{{"d", "k", "points", "fit_j_max", "c_star", "exceedance"},
                {nums({double(D.d), double(D.k), double(count), double(rep.fit_j_max), rep.c_star, rep.exceedance})}});
  PlotSeries s{"max ratio / C*", {}, {}};
  for (const auto& [j, v] : worst) s.x.push_back(std::ldexp(1.0, j)), s.y.push_back(v / rep.c_star);
  emit_svg(cx, "kernel_bounds.svg", svg_loglog({"K_j bound exceedance", "2^j", "ratio / C*", {s}}));
  *cx.log << "exceedance " << fmt_number(rep.exceedance) << "\n";
}

void run_osc_sweep(const Context& cx) {
  const Config& c = cx.cfg;
  const double a1 = c.get_double("alpha1", 0.0), a2 = c.get_double("alpha2", 0.0);
  const auto rep = check_envelope(make_envelope_sweep(a1, a2), c.get_double("calibration", 8.0));
  CsvTable t{{"alpha1", "alpha2", "A", "B1", "B2", "lambda", "abs_I", "envelope", "ratio"}, {}};
  std::map<double, double> worst;
  for (const auto& r : rep.rows) {
    t.add(nums({r.alpha1, r.alpha2, r.A, r.B1, r.B2, r.lambda, r.abs_I, r.envelope, r.ratio}));
    worst[r.lambda] = std::max(worst[r.lambda], r.ratio);
  }
  emit(cx, "osc_sweep.csv", t);
  emit(cx, "osc_sweep_summary.csv",
       CsvTable{{"alpha1", "alpha2", "calibration_lambda", "c_star", "exceedance"},
                {nums({a1, a2, rep.calibration_lambda, rep.c_star, rep.exceedance})}});
  PlotSeries s{"max |I| / envelope", {}, {}};
  for (const auto& [l, v] : worst) s.x.push_back(l), s.y.push_back(v);
  emit_svg(cx, "osc_sweep.svg", svg_loglog({"Oscillatory integral envelope", "lambda", "|I| / envelope", {s}}));
  *cx.log << "exceedance " << fmt_number(rep.exceedance) << "\n";
}

void run_apply_t(const Context& cx) {
  const Config& c = cx.cfg;
  const BlockRadialProfile f = input_profile(c);
  OutputGrids og;
  if (c.has("out_rmax")) {
    const double R = c.get_double("out_rmax", 40.0);
    if (!(R > 0.0)) throw ConfigError("out_rmax must be positive");
    const int panels = std::max(1, int(std::ceil(R / 4.0)));
    og.g1 = og.g2 = make_panel_grid(R, panels, 17);
  }
  const BlockRadialProfile tf = extend(f, og, c.get_int("n_theta", 0));
  save_profile(tf, (cx.out / "tf.bin").string());
  emit(cx, "apply_t.csv",
       CsvTable{{"input_l2", "output_l2", "output_sup", "grid1_rmax", "grid2_rmax", "nodes"},
                {nums({lebesgue_norm(f, 2.0), lebesgue_norm(tf, 2.0), lebesgue_norm(tf, kInf), tf.grid1().rmax(),
                       tf.grid2().rmax(), double(tf.n1() * tf.n2())})}});
  PlotSeries s{"|Tf|(rho1, 0)", {}, {}};
  s.y = axis_cut(tf, s.x);
  emit_svg(cx, "apply_t.svg", svg_loglog({"Extension along the first axis", "rho1", "|Tf|", {s}}));
}

void run_tj_scaling(const Context& cx) {
  const Config& c = cx.cfg;
  const TestFamily spec = family_spec(c, "sphere_constant", {1.0, 1.5});
  const auto fam = make_family(spec);
  const auto rep = check_Tj_scaling(fam, j_range(c));
  CsvTable t{{"member", "param", "j", "l2_ratio", "lorentz_ratio"}, {}};
  LogLogPlot plot{"T_j scaling ratios", "2^j", "ratio", {}};
  for (std::size_t m = 0; m < rep.rows.size(); ++m) {
    PlotSeries a{"L2 member " + std::to_string(m), {}, {}}, b{"Lorentz member " + std::to_string(m), {}, {}};
    for (const auto& r : rep.rows[m]) {
      t.add(nums({double(m), spec.params[m], double(r.j), r.l2_ratio, r.lorentz_ratio}));
      a.x.push_back(std::ldexp(1.0, r.j)), a.y.push_back(r.l2_ratio);
      b.x.push_back(std::ldexp(1.0, r.j)), b.y.push_back(r.lorentz_ratio);
    }
    plot.series.push_back(a), plot.series.push_back(b);
  }
  emit(cx, "tj_scaling.csv", t);
  emit(cx, "tj_scaling_summary.csv",
       CsvTable{{"p_st", "p_lorentz", "l2_spread", "lorentz_spread", "uniform"},
                {nums({rep.p_st, rep.p_lorentz, rep.l2_spread, rep.lorentz_spread, rep.uniform ? 1.0 : 0.0})}});
  emit_svg(cx, "tj_scaling.svg", svg_loglog(plot));
}

SymbolModel symbol_of(const Config& c) {
  try {
    return parse_symbol(c.get("symbol", "helmholtz"), c.get_double("delta", 0.0));
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

void run_resolve(const Context& cx) {
  const Config& c = cx.cfg;
  const SymbolModel P = symbol_of(c);
  const BlockRadialProfile f = input_profile(c);
  const ResolventField u = resolve(f, P);
  CsvTable manifest{{"part", "zero", "radius", "file", "l2_norm"}, {}};
  auto put = [&](const std::string& part, int m, double r, const BlockRadialProfile& g) {
    const std::string file = part + (m >= 0 ? "_" + std::to_string(m) : "") + ".bin";
    save_profile(g, (cx.out / file).string());
    manifest.add({part, std::to_string(m), fmt_number(r), file, fmt_number(lebesgue_norm(g, 2.0))});
  };
  put("solution", -1, 0.0, u.profile);
  put("regular", -1, 0.0, u.regular);
  for (std::size_t m = 0; m < P.zeros.size(); ++m) {
    put("delta", int(m), P.zeros[m], u.delta[m]);
    put("pv", int(m), P.zeros[m], u.pv[m]);
  }
  emit(cx, "resolve_manifest.csv", manifest);
  const ResidualReport res = resolvent_residual(f, P, u.profile);
  emit(cx, "resolve_summary.csv",
       CsvTable{{"symbol", "zeros", "band_tail", "residual", "ball_radius"},
                {{P.name, std::to_string(P.zeros.size()), fmt_number(u.band_tail), fmt_number(res.relative),
                  fmt_number(res.ball_radius)}}});
  PlotSeries s{"|u|(rho1, 0)", {}, {}}, g{"|f|(rho1, 0)", {}, {}};
  s.y = axis_cut(u.profile, s.x);
  g.y = axis_cut(f, g.x);
  emit_svg(cx, "resolve.svg", svg_loglog({"Outgoing solution along the first axis", "rho1", "modulus", {s, g}}));
  *cx.log << "residual " << fmt_number(res.relative) << "\n";
}

void run_plemelj(const Context& cx) {
  const Config& c = cx.cfg;
  const SymbolModel P = symbol_of(c);
  const int m = c.get_int("m", 0);
  if (m < 0 || m >= int(P.zeros.size())) throw ConfigError("m must index a zero of the symbol");
  const double shift = c.get_double("h_shift", 0.0), width = c.get_double("h_width", 1.0);
  if (!(width > 0.0)) throw ConfigError("h_width must be positive");
  const auto h = [=](double r) { return std::exp(-(r - shift) * (r - shift) / (2.0 * width * width)); };
  const cplx limit = plemelj_limit(P, m, h);
  const auto eps = c.get_list("eps", {1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128, 1.0 / 256, 1.0 / 512});
  for (std::size_t i = 1; i < eps.size(); ++i)
    if (std::abs(eps[i] - 0.5 * eps[i - 1]) > 1e-12 * eps[i - 1]) throw ConfigError("eps must be a halving ladder");
  CsvTable t{{"eps", "re", "im", "abs_diff"}, {}};
  std::vector<cplx> vals;
  PlotSeries s{"|u_eps - limit|", {}, {}};
  for (double e : eps) {
    const cplx v = plemelj_eps(P, m, h, e);
    vals.push_back(v);
    t.add(nums({e, v.real(), v.imag(), std::abs(v - limit)}));
    s.x.push_back(e), s.y.push_back(std::abs(v - limit));
  }
  emit(cx, "plemelj.csv", t);
  const cplx ex = vals.empty() ? cplx(NAN, NAN) : richardson(vals);
  emit(cx, "plemelj_summary.csv",
       CsvTable{{"zero", "limit_re", "limit_im", "extrapolated_re", "extrapolated_im", "relative_difference"},
                {nums({P.zeros[m], limit.real(), limit.imag(), ex.real(), ex.imag(), std::abs(ex - limit) / std::abs(limit)})}});
  emit_svg(cx, "plemelj.svg", svg_loglog({"Approach of the regularized integral", "eps", "error", {s}}));
}

void run_riesz_map(const Context& cx) {
  const Config& c = cx.cfg;
  const TestFamily spec = family_spec(c, "gaussian", {1.0});
  std::vector<std::pair<double, double>> grid;
  if (c.has("p_inv") || c.has("q_inv")) {
    for (double a : c.get_list("p_inv", {0.7, 0.8, 0.9, 1.0}))
      for (double b : c.get_list("q_inv", {0.0, 0.1, 0.2, 0.3})) grid.emplace_back(a, b);
  } else {
    grid = interior_lattice(spec.dims.d, spec.dims.k, c.get_double("step", 0.1));
  }
  for (const auto& [a, b] : grid)
    if (!(a >= 0 && a <= 1 && b >= 0 && b <= 1)) throw ConfigError("exponents 1/p, 1/q must lie in [0, 1]");
  if (grid.size() > 200) throw ConfigError("riesz-map probes at most 200 points");
  TrajectoryOptions opt;
  const std::string op = c.get("op", "extend");
  if (op == "resolve") opt.op = TrajectoryOp::resolve;
  else if (op != "extend") throw ConfigError("op must be extend or resolve");
  opt.symbol = c.get("symbol", "helmholtz");
  opt.lorentz = c.get_bool("lorentz", false);
  const auto R = c.get_list("radii", {16, 32, 64, 128, 256});
  const auto rep = riesz_map(spec, grid, R, opt);

  CsvTable traj{{"member", "p_inv", "q_inv", "region", "R", "ratio"}, {}};
  CsvTable pts{{"member", "p_inv", "q_inv", "region", "slope", "trend"}, {}};
  LogLogPlot plot{"Ratio trajectories", "R", "ratio", {}};
  const std::size_t per = grid.size();
  for (std::size_t i = 0; i < rep.points.size(); ++i) {
    const auto& p = rep.points[i];
    const std::string member = std::to_string(i / per);
    for (std::size_t r = 0; r < p.trajectory.R.size(); ++r)
      traj.add({member, fmt_number(p.p_inv), fmt_number(p.q_inv), region_name(p.region), fmt_number(p.trajectory.R[r]),
                fmt_number(p.trajectory.ratio[r])});
    pts.add({member, fmt_number(p.p_inv), fmt_number(p.q_inv), region_name(p.region), fmt_number(p.slope),
             trend_name(p.trend)});
    if (plot.series.size() < 8)
      plot.series.push_back({"(" + fmt_number(p.p_inv) + ", " + fmt_number(p.q_inv) + ")", p.trajectory.R, p.trajectory.ratio});
  }
  emit(cx, "riesz_trajectories.csv", traj);
  emit(cx, "riesz_points.csv", pts);
  emit_svg(cx, "riesz_map.svg", svg_riesz(rep));
  emit_svg(cx, "riesz_trajectories.svg", svg_loglog(plot));
}

void run_stein_tomas(const Context& cx) {
  const Config& c = cx.cfg;
  const TestFamily spec = family_spec(c, "knapp_block", {0.25, 0.125, 0.0625, 0.03125});
  const double p = c.get_double("p", p_stein_tomas(spec.dims));
  if (!(p >= 1.0)) throw ConfigError("p must be >= 1");
  const auto fam = make_family(spec);
  CsvTable t{{"param", "p", "ratio", "sphere_l2", "norm_p", "degenerate"}, {}};
  PlotSeries s{"ratio", {}, {}};
  double lo = INFINITY, hi = 0.0;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const auto r = stein_tomas_ratio(fam[i], p, c.get_int("n_theta", 0));
    t.add(nums({spec.params[i], p, r.ratio, r.sphere_l2, r.norm_p, r.degenerate ? 1.0 : 0.0}));
    s.x.push_back(spec.params[i]), s.y.push_back(r.ratio);
    if (!r.degenerate) lo = std::min(lo, r.ratio), hi = std::max(hi, r.ratio);
  }
  emit(cx, "stein_tomas.csv", t);
  emit(cx, "stein_tomas_summary.csv",
       CsvTable{{"family", "p", "min_ratio", "max_ratio", "spread"},
                {{family_name(spec.kind), fmt_number(p), fmt_number(lo), fmt_number(hi), fmt_number(hi / lo)}}});
  emit_svg(cx, "stein_tomas.svg", svg_loglog({"Restriction ratio across the family", "parameter", "ratio", {s}}));
}

struct Command {
  const char* name;
  const char* help;
  std::vector<const char*> keys;
  std::function<void(const Context&)> run;
};

std::vector<Command> commands() {
  const std::vector<const char*> fam = {"family", "params", "axis", "rmax", "panels", "d", "k"};
  auto with = [&](std::vector<const char*> extra) {
    extra.insert(extra.end(), fam.begin(), fam.end());
    return extra;
  };
  return {
      {"kernel-bounds", "dyadic kernel bound sweep", {"d", "k", "points", "j_max", "fit_j", "seed"}, run_kernel_bounds},
      {"osc-sweep", "oscillatory integral envelope sweep", {"alpha1", "alpha2", "calibration"}, run_osc_sweep},
      {"apply-t", "restriction-extension operator", with({"input", "out_rmax", "n_theta"}), run_apply_t},
      {"tj-scaling", "dyadic piece scaling ratios", with({"j_max"}), run_tj_scaling},
      {"resolve", "outgoing resolvent and its parts", with({"input", "symbol", "delta"}), run_resolve},
      {"plemelj", "boundary value vs regularized integrals", {"symbol", "delta", "m", "h_shift", "h_width", "eps"}, run_plemelj},
      {"riesz-map", "empirical Riesz diagram probe",
       with({"p_inv", "q_inv", "step", "radii", "op", "symbol", "lorentz"}), run_riesz_map},
      {"stein-tomas", "restriction ratio over a family", with({"p", "n_theta"}), run_stein_tomas},
  };
}

std::string flag_name(const char* key) {
  std::string s = key;
  for (auto& ch : s)
    if (ch == '_') ch = '-';
  return "--" + s;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Block-radial restriction and resolvent experiments", "blockrad-cli"};
  app.require_subcommand(1);
  const auto cmds = commands();
  std::string config_path, out_dir = "report";
  std::map<std::string, std::map<std::string, std::string>> flags;
  for (const auto& cmd : cmds) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
    for (const char* key : cmd.keys) sub->add_option(flag_name(key), flags[cmd.name][key], std::string("overrides '") + key + "'");
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  for (const auto& cmd : cmds) {
    CLI::App* sub = app.get_subcommand(cmd.name);
    if (!sub->parsed()) continue;
    try {
      Context cx{config_path.empty() ? Config{} : Config::load(config_path), out_dir, &out};
      for (const char* key : cmd.keys) {
        if (sub->count(flag_name(key))) cx.cfg.set(key, flags[cmd.name][key]);
      }
      fs::create_directories(cx.out);
      cmd.run(cx);
      return kExitOk;
    } catch (const ConfigError& e) {
      err << "usage error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitComputation;
    }
  }
  return kExitUsage;
}

int cli_dispatch(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_dispatch(args, std::cout, std::cerr);
}

}  // namespace blockrad
