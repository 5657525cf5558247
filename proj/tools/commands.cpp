#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <locale>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "figure.hpp"
#include "io.hpp"
#include "schwarzflow/errors.hpp"
#include "schwarzflow/exact_solutions.hpp"
#include "schwarzflow/flow_engine.hpp"
#include "schwarzflow/schwarz_calculus.hpp"
#include "verify.hpp"

#ifndef SCHWARZFLOW_VERSION
#define SCHWARZFLOW_VERSION "unknown"
#endif

namespace schwarzflow::io {
namespace fs = std::filesystem;
namespace {

constexpr double kPi = std::numbers::pi;

struct FamilyArgs {
  std::string family;
  double a0 = 1.0;
  std::optional<double> theta_lo, theta_hi;

  FamilySpec spec() const {
    FamilySpec s{parse_family(family)};
    s.a0 = a0;
    if (!(a0 > 0.0)) throw std::invalid_argument("--a0 must be > 0");
    return s;
  }
  ThetaRange range(const FamilySpec& s) const {
    ThetaRange r = default_theta_range(s);
    if (theta_lo) r.lo = *theta_lo;
    if (theta_hi) r.hi = *theta_hi;
    if (!(r.hi > r.lo)) throw std::invalid_argument("--theta-hi must exceed --theta-lo");
    return r;
  }
};

void add_family_options(CLI::App* sub, FamilyArgs& fa, bool required = true) {
  auto* f = sub->add_option("--family", fa.family, "circle | grim_reaper | paperclip | hairclip");
  if (required) f->required();
  sub->add_option("--a0", fa.a0, "circle initial radius");
  sub->add_option("--theta-lo", fa.theta_lo, "lower parameter bound (default: family range)");
  sub->add_option("--theta-hi", fa.theta_hi, "upper parameter bound (default: family range)");
}

// Everything a manifest needs: the argument vector that reproduces the run,
// plus the parsed parameter set for readers.
struct Invocation {
  std::vector<std::string> args;
  std::string command;
  json parameters = json::object();
};

json collect_parameters(const CLI::App* sub) {
  json p = json::object();
  for (const auto* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name.empty()) continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (res.size() == 1)
        p[name] = res.front();
      else
        p[name] = res;
    } else {
      p[name] = opt->get_default_str();
    }
  }
  return p;
}

void write_manifest(const fs::path& path, const Invocation& inv, const std::vector<fs::path>& inputs,
                    const std::vector<fs::path>& outputs, double seconds, json summary) {
  json m;
  m["command"] = inv.command;
  m["args"] = inv.args;
  m["parameters"] = inv.parameters;
  m["version"] = SCHWARZFLOW_VERSION;
  json in = json::array(), out = json::array();
  for (const auto& p : inputs) in.push_back(p.generic_string());
  for (const auto& p : outputs) out.push_back(p.generic_string());
  m["inputs"] = std::move(in);
  m["outputs"] = std::move(out);
  m["wall_seconds"] = seconds;
  m["summary"] = std::move(summary);
  write_atomic(path, m.dump(2) + "\n");
}

fs::path default_manifest(const fs::path& out) {
  fs::path m = out;
  m += ".manifest.json";
  return m;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------- sample

struct SampleArgs {
  FamilyArgs fam;
  double t = 0.0;
  std::size_t n = 512;
  std::string spacing = "theta";
  std::string format = "csv";
  std::string out;
  std::string manifest;
};

int cmd_sample(const SampleArgs& a, const Invocation& inv) {
  const auto t0 = std::chrono::steady_clock::now();
  const FamilySpec spec = a.fam.spec();
  check_window(spec, a.t);
  const ThetaRange r = a.fam.range(spec);
  const CurveSamples s = a.spacing == "arclength" ? sample_family_arclength(spec, a.t, a.n, r.lo, r.hi)
                                                  : sample_family(spec, a.t, a.n, r.lo, r.hi);
  const std::string body = a.format == "json" ? curve_json(s, a.t).dump(2) + "\n" : curve_csv(s, a.t);
  if (a.out.empty() || a.out == "-") {
    std::cout << body;
    return kExitOk;
  }
  write_atomic(a.out, body);
  double worst = 0.0;
  for (const auto& p : s.points) worst = std::max(worst, std::abs(implicit_residual(spec, a.t, p.z)));
  json summary = {{"n", s.size()},
                  {"topology", s.closed() ? "closed" : "open"},
                  {"total_length", s.total_length},
                  {"max_implicit_residual", worst}};
  write_manifest(a.manifest.empty() ? default_manifest(a.out) : fs::path(a.manifest), inv, {}, {a.out},
                 seconds_since(t0), summary);
  std::cerr << "wrote " << s.size() << " samples to " << a.out << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- residual

struct ResidualArgs {
  std::string identity;
  FamilyArgs fam;
  double t = 0.0;
  std::size_t n = 512;
  std::string mode = "analytic";
  std::optional<double> tol;
  bool flip_adot = false;
  std::string out;
  std::string manifest;
};

int cmd_residual(const ResidualArgs& a, const Invocation& inv) {
  const auto t0 = std::chrono::steady_clock::now();
  const EvalMode mode = parse_mode(a.mode);
  ResidualOptions ro;
  ro.flip_adot = a.flip_adot;
  ResidualReport rep;
  double tol = 1e-10;
  bool pass = false;
  if (a.identity == "reaper") {
    rep = reaper_functional_residual(a.n);
    tol = 1e-8;
  } else {
    if (a.fam.family.empty()) throw std::invalid_argument("--family is required for identity " + a.identity);
    const FamilySpec spec = a.fam.spec();
    check_window(spec, a.t);
    if (a.identity == "pde") {
      rep = pde_residual(spec, a.t, a.n, mode, ro);
    } else if (a.identity == "heat") {
      rep = heat_residual(spec, a.t, a.n, mode, ro);
    } else if (a.identity == "oncurve") {
      rep = on_curve_residual(spec, a.t, a.n, ro);
      tol = 1e-12;
    } else if (a.identity == "kappa-vn") {
      rep = curvature_velocity_residual(spec, a.t, a.n, ro);
      tol = 1e-12;
    } else if (a.identity == "curvature") {
      rep = curvature_vs_geometric(spec, a.t, a.n, ro);
    } else if (a.identity == "implicit") {
      const ThetaRange r = a.fam.range(spec);
      const auto s = sample_family(spec, a.t, a.n, r.lo, r.hi);
      rep.identity = "implicit";
      rep.n = s.size();
      for (const auto& p : s.points) rep.add(p.theta, std::abs(implicit_residual(spec, a.t, p.z)));
      tol = 1e-12;
    } else if (a.identity == "ode") {
      rep.identity = "ode";
      const double exact = ode_residual(spec, a.t);
      const double fd = ode_fd_residual(spec, a.t, 1e-4);
      rep.max_abs = exact;
      rep.components = {{"closed_form", exact}, {"centered_difference_dt_1e-4", fd}};
      pass = exact < 1e-10 && fd < 1e-8;
    } else {
      throw std::invalid_argument("unknown identity '" + a.identity +
                                  "' (pde | heat | ode | reaper | implicit | oncurve | kappa-vn | curvature)");
    }
    if (rep.mode == EvalMode::finite_difference && rep.h > 0.0) tol = 50.0 * rep.h * rep.h;
  }
  if (a.tol) tol = *a.tol;
  if (a.identity != "ode" || a.tol) pass = rep.max_abs < tol;
  if (a.identity == "ode" && !a.tol) tol = 1e-10;

  const json report = report_json(rep, tol, pass);
  std::cout << rep.identity << " (" << to_string(rep.mode) << ", n=" << rep.n << "): max_abs = "
            << format_double(rep.max_abs) << ", tolerance = " << format_double(tol) << " -> "
            << (pass ? "PASS" : "FAIL") << "\n";
  if (!a.out.empty()) {
    write_atomic(a.out, report.dump(2) + "\n");
    write_manifest(a.manifest.empty() ? default_manifest(a.out) : fs::path(a.manifest), inv, {}, {a.out},
                   seconds_since(t0), {{"max_abs", rep.max_abs}, {"tolerance", tol}, {"passed", pass}});
  }
  return pass ? kExitOk : kExitVerificationFailed;
}

// ---------------------------------------------------------------- flow

struct FlowArgs {
  FamilyArgs fam;
  std::optional<double> t0;
  std::string init;
  bool open = false;
  std::vector<double> ellipse;
  std::vector<double> segment;
  std::size_t n = 256;
  double cfl = 0.25;
  std::size_t resample_every = 5;
  double t_end = 0.0;
  double stop_area = 1e-3;
  double stop_spacing = 1e-3;
  std::string ends = "free";
  std::vector<double> checkpoints;
  std::optional<double> every;
  std::string out_dir;
  std::string manifest;
};

std::string checkpoint_name(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "checkpoint_%03zu.csv", k);
  return buf;
}

int cmd_flow(const FlowArgs& a, const Invocation& inv) {
  const auto t0 = std::chrono::steady_clock::now();
  const int sources = int(!a.fam.family.empty()) + int(!a.init.empty()) + int(!a.ellipse.empty()) +
                      int(!a.segment.empty());
  if (sources != 1) throw std::invalid_argument("flow needs exactly one of --family, --init, --ellipse, --segment");

  FlowConfig cfg;
  cfg.n = a.n;
  cfg.cfl = a.cfl;
  cfg.resample_every = a.resample_every;
  cfg.t_start = a.t0.value_or(0.0);
  cfg.t_end = a.t_end;
  cfg.stop_area = a.stop_area;
  cfg.stop_spacing = a.stop_spacing;
  if (a.ends == "pinned")
    cfg.end_condition = EndCondition::oracle_pinned;
  else if (a.ends != "free")
    throw std::invalid_argument("--ends must be free or pinned");

  CurveSamples initial;
  std::vector<fs::path> inputs;
  if (!a.fam.family.empty()) {
    const FamilySpec spec = a.fam.spec();
    check_window(spec, cfg.t_start);
    const ThetaRange r = a.fam.range(spec);
    initial = sample_family_arclength(spec, cfg.t_start, cfg.n, r.lo, r.hi);
    cfg.oracle = spec;
    cfg.pin_theta_lo = r.lo;
    cfg.pin_theta_hi = r.hi;
    if (cfg.end_condition == EndCondition::oracle_pinned) check_window(spec, cfg.t_end);
  } else if (!a.init.empty()) {
    auto loaded = load_curve_csv(a.init, a.open ? Topology::open : Topology::closed);
    initial = std::move(loaded.curve);
    if (!a.t0) cfg.t_start = loaded.t;
    inputs.emplace_back(a.init);
  } else if (!a.ellipse.empty()) {
    initial = make_ellipse(cfg.n, a.ellipse.at(0), a.ellipse.at(1));
  } else {
    initial = make_segment(cfg.n, {a.segment.at(0), a.segment.at(1)}, {a.segment.at(2), a.segment.at(3)});
  }
  cfg.validate();

  std::vector<double> marks = a.checkpoints;
  if (a.every) {
    if (!(*a.every > 0.0)) throw std::invalid_argument("--every must be > 0");
    const auto count = static_cast<std::size_t>(std::floor((cfg.t_end - cfg.t_start) / *a.every + 1e-9));
    for (std::size_t k = 1; k <= count; ++k) marks.push_back(cfg.t_start + static_cast<double>(k) * *a.every);
  }

  int code = kExitOk;
  std::vector<FlowState> states;
  std::string reason;
  std::string error;
  try {
    auto result = run(initial, cfg, marks);
    states = std::move(result.checkpoints);
    reason = to_string(result.reason);
  } catch (const FlowBlowupError& e) {
    states = e.checkpoints();
    reason = "blowup";
    error = e.what();
    code = kExitBlowup;
  }

  const fs::path dir = a.out_dir;
  std::vector<fs::path> outputs;
  for (std::size_t k = 0; k < states.size(); ++k) {
    const fs::path p = dir / checkpoint_name(k);
    write_atomic(p, curve_csv(states[k].curve, states[k].t));
    outputs.push_back(p);
  }
  const fs::path diag = dir / "diagnostics.csv";
  write_atomic(diag, diagnostics_csv(states));
  outputs.push_back(diag);

  const auto& last = states.back();
  json summary = {{"checkpoints", states.size()},
                  {"final_t", last.t},
                  {"steps", last.step},
                  {"stop_reason", reason},
                  {"final_length", last.diagnostics.length}};
  if (last.diagnostics.area) summary["final_area"] = *last.diagnostics.area;
  if (!error.empty()) summary["error"] = error;
  write_manifest(a.manifest.empty() ? dir / "manifest.json" : fs::path(a.manifest), inv, inputs, outputs,
                 seconds_since(t0), summary);
  std::cout << "flow: " << states.size() << " checkpoints, t = " << format_double(last.t) << ", steps = "
            << last.step << ", stop = " << reason << "\n";
  if (code == kExitBlowup) std::cerr << "numerical blow-up: " << error << "\n";
  return code;
}

// ---------------------------------------------------------------- compare

struct CompareArgs {
  FamilyArgs fam;
  std::vector<std::string> files;
  bool open = false;
  double exclude = 0.0;
  std::optional<double> tol;
  std::string out;
  std::string manifest;
};

int cmd_compare(const CompareArgs& a, const Invocation& inv) {
  const auto t0 = std::chrono::steady_clock::now();
  const FamilySpec spec = a.fam.spec();
  const ThetaRange r = a.fam.range(spec);
  const Topology topo = (!a.open && closes(spec, r.lo, r.hi)) ? Topology::closed : Topology::open;
  std::vector<FlowState> states;
  std::vector<fs::path> inputs;
  for (const auto& f : a.files) {
    auto loaded = load_curve_csv(f, topo);
    FlowState s;
    s.t = loaded.t;
    s.curve = std::move(loaded.curve);
    states.push_back(std::move(s));
    inputs.emplace_back(f);
  }
  const auto cmp = compare_to_oracle(states, spec, r, a.exclude);
  json rows = json::array();
  double worst = 0.0;
  for (std::size_t k = 0; k < cmp.size(); ++k) {
    rows.push_back({{"file", a.files[k]}, {"t", cmp[k].t}, {"sup_distance", cmp[k].sup_distance}});
    worst = std::max(worst, cmp[k].sup_distance);
    std::cout << a.files[k] << "  t = " << format_double(cmp[k].t) << "  sup_distance = "
              << format_double(cmp[k].sup_distance) << "\n";
  }
  const bool pass = !a.tol || worst < *a.tol;
  json report = {{"oracle", std::string(to_string(spec.family))},
                 {"theta_lo", r.lo},
                 {"theta_hi", r.hi},
                 {"exclude_fraction", a.exclude},
                 {"max_sup_distance", worst},
                 {"comparisons", rows}};
  if (a.tol) {
    report["tolerance"] = *a.tol;
    report["passed"] = pass;
  }
  if (!a.out.empty()) {
    write_atomic(a.out, report.dump(2) + "\n");
    write_manifest(a.manifest.empty() ? default_manifest(a.out) : fs::path(a.manifest), inv, inputs, {a.out},
                   seconds_since(t0), {{"max_sup_distance", worst}});
  }
  return pass ? kExitOk : kExitVerificationFailed;
}

// ---------------------------------------------------------------- invariance

struct InvarianceArgs {
  std::string kind = "scaling";
  double param = 2.0;
  std::string base = "circle";
  double a0 = 1.0;
  std::vector<double> ellipse{2.0, 1.0};
  double tau = 0.2;
  std::size_t n = 256;
  double cfl = 0.25;
  double tol = 5e-3;
  std::string out;
  std::string manifest;
};

int cmd_invariance(const InvarianceArgs& a, const Invocation& inv) {
  const auto t0 = std::chrono::steady_clock::now();
  InvarianceKind kind;
  if (a.kind == "scaling")
    kind = InvarianceKind::scaling;
  else if (a.kind == "rotation")
    kind = InvarianceKind::rotation;
  else
    throw std::invalid_argument("--kind must be scaling or rotation");
  CurveSamples base;
  if (a.base == "circle")
    base = make_circle(a.n, a.a0);
  else if (a.base == "ellipse")
    base = make_ellipse(a.n, a.ellipse.at(0), a.ellipse.at(1));
  else
    throw std::invalid_argument("--base must be circle or ellipse");
  FlowConfig cfg;
  cfg.n = a.n;
  cfg.cfl = a.cfl;
  cfg.t_end = a.tau;
  const auto rep = invariance_test(kind, a.param, base, cfg);
  const bool pass = rep.sup_distance < a.tol;
  std::cout << a.kind << " (" << format_double(a.param) << ", tau = " << format_double(a.tau)
            << "): sup_distance = " << format_double(rep.sup_distance) << " -> " << (pass ? "PASS" : "FAIL")
            << "\n";
  if (!a.out.empty()) {
    json report = {{"kind", a.kind},     {"parameter", a.param}, {"tau", a.tau}, {"base", a.base},
                   {"n", a.n},           {"sup_distance", rep.sup_distance},
                   {"tolerance", a.tol}, {"passed", pass}};
    write_atomic(a.out, report.dump(2) + "\n");
    write_manifest(a.manifest.empty() ? default_manifest(a.out) : fs::path(a.manifest), inv, {}, {a.out},
                   seconds_since(t0), {{"sup_distance", rep.sup_distance}, {"passed", pass}});
  }
  return pass ? kExitOk : kExitVerificationFailed;
}

// ---------------------------------------------------------------- figure

struct FigureArgs {
  std::string name;
  std::string out;
  std::size_t n = 512;
  std::string manifest;
};

int cmd_figure(const FigureArgs& a, const Invocation& inv) {
  const auto t0 = std::chrono::steady_clock::now();
  const Figure fig = make_figure(a.name, a.n);
  const fs::path svg = a.out.empty() ? fs::path(a.name + ".svg") : fs::path(a.out);
  const fs::path dir = svg.parent_path();
  std::vector<fs::path> outputs{svg};
  write_atomic(svg, figure_svg(fig));
  double worst = 0.0;
  json curves = json::array();
  for (const auto& c : fig.curves) {
    const fs::path side = dir / sidecar_name(fig.name, c.t);
    write_atomic(side, curve_csv(c.samples, c.t));
    outputs.push_back(side);
    double w = 0.0;
    for (const auto& p : c.samples.points) w = std::max(w, std::abs(implicit_residual(fig.family, c.t, p.z)));
    worst = std::max(worst, w);
    curves.push_back({{"t", c.t}, {"csv", side.generic_string()}, {"max_implicit_residual", w}});
  }
  write_manifest(a.manifest.empty() ? default_manifest(svg) : fs::path(a.manifest), inv, {}, outputs,
                 seconds_since(t0), {{"curves", curves}, {"max_implicit_residual", worst}});
  std::cout << "figure " << fig.name << ": " << fig.curves.size() << " curves -> " << svg.generic_string()
            << " (max implicit residual " << fmt_short(worst) << ")\n";
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string suite = "all";
  bool flip_adot = false;
  std::string json_out;
  std::string manifest;
};

int cmd_verify(const VerifyArgs& a, const Invocation& inv) {
  const auto t0 = std::chrono::steady_clock::now();
  VerifyOptions opts;
  opts.flip_adot = a.flip_adot;
  const auto checks = run_suite(a.suite, opts);
  std::cout << summary_table(checks);
  const json summary = summary_json(checks);
  if (!a.json_out.empty()) {
    write_atomic(a.json_out, summary.dump(2) + "\n");
    write_manifest(a.manifest.empty() ? default_manifest(a.json_out) : fs::path(a.manifest), inv, {},
                   {a.json_out}, seconds_since(t0), {{"passed", summary["passed"]}});
  }
  return summary["passed"].get<bool>() ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Schwarz-function curve shortening: exact solutions, identities and a marker flow solver",
               "schwarzflow"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(SCHWARZFLOW_VERSION));

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "sample an exact solution");
  add_family_options(sample, sa.fam);
  sample->add_option("--t", sa.t, "time")->required();
  sample->add_option("--n", sa.n, "number of samples")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 24));
  sample->add_option("--spacing", sa.spacing, "theta | arclength")->check(CLI::IsMember({"theta", "arclength"}));
  sample->add_option("--format", sa.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  sample->add_option("--out", sa.out, "output file (stdout when omitted)");
  sample->add_option("--manifest", sa.manifest, "manifest path (default <out>.manifest.json)");

  ResidualArgs ra;
  auto* residual = app.add_subcommand("residual", "check one identity and report the max residual");
  residual->add_option("--identity", ra.identity, "pde | heat | ode | reaper | implicit | oncurve | kappa-vn | curvature")
      ->required();
  add_family_options(residual, ra.fam, false);
  residual->add_option("--t", ra.t, "time");
  residual->add_option("--n", ra.n, "number of samples");
  residual->add_option("--mode", ra.mode, "analytic | fd");
  residual->add_option("--tol", ra.tol, "override the documented tolerance");
  residual->add_flag("--flip-adot", ra.flip_adot, "negate a-dot in the analytic S_t (self-test)");
  residual->add_option("--out", ra.out, "JSON report path");
  residual->add_option("--manifest", ra.manifest, "manifest path");

  FlowArgs fa;
  auto* flow = app.add_subcommand("flow", "run the marker solver");
  add_family_options(flow, fa.fam, false);
  flow->add_option("--t0", fa.t0, "start time (family initial data, or override of the CSV time)");
  flow->add_option("--init", fa.init, "initial curve CSV (t,theta,x,y)");
  flow->add_flag("--open", fa.open, "treat --init as an open curve");
  flow->add_option("--ellipse", fa.ellipse, "initial ellipse semi-axes SX SY")->expected(2)->delimiter(',');
  flow->add_option("--segment", fa.segment, "initial segment X0 Y0 X1 Y1")->expected(4)->delimiter(',');
  flow->add_option("--n", fa.n, "marker count");
  flow->add_option("--cfl", fa.cfl, "dt = cfl * h_min^2");
  flow->add_option("--resample-every", fa.resample_every, "steps between resamplings");
  flow->add_option("--t-end", fa.t_end, "final time")->required();
  flow->add_option("--stop-area", fa.stop_area, "stop when a closed curve's area falls below this");
  flow->add_option("--stop-spacing", fa.stop_spacing, "stop when resampling cannot keep this marker gap");
  flow->add_option("--ends", fa.ends, "free | pinned (open curves)");
  flow->add_option("--checkpoints", fa.checkpoints, "checkpoint times")->delimiter(',');
  flow->add_option("--every", fa.every, "checkpoint interval");
  flow->add_option("--out-dir", fa.out_dir, "output directory")->required();
  flow->add_option("--manifest", fa.manifest, "manifest path (default <out-dir>/manifest.json)");

  CompareArgs ca;
  auto* compare = app.add_subcommand("compare", "sup distance of checkpoint CSVs to an exact solution");
  add_family_options(compare, ca.fam);
  compare->add_option("files", ca.files, "checkpoint CSV files")->required()->check(CLI::ExistingFile);
  compare->add_flag("--open", ca.open, "treat inputs as open curves");
  compare->add_option("--exclude", ca.exclude, "fraction of markers skipped at each open end");
  compare->add_option("--tol", ca.tol, "fail (exit 1) above this distance");
  compare->add_option("--out", ca.out, "JSON report path");
  compare->add_option("--manifest", ca.manifest, "manifest path");

  InvarianceArgs ia;
  auto* invariance = app.add_subcommand("invariance", "scaling / rotation equivariance of the flow");
  invariance->add_option("--kind", ia.kind, "scaling | rotation");
  invariance->add_option("--param", ia.param, "lambda or sigma");
  invariance->add_option("--base", ia.base, "circle | ellipse");
  invariance->add_option("--a0", ia.a0, "circle radius");
  invariance->add_option("--ellipse", ia.ellipse, "ellipse semi-axes")->expected(2)->delimiter(',');
  invariance->add_option("--tau", ia.tau, "flow duration");
  invariance->add_option("--n", ia.n, "marker count");
  invariance->add_option("--cfl", ia.cfl, "time step factor");
  invariance->add_option("--tol", ia.tol, "pass threshold");
  invariance->add_option("--out", ia.out, "JSON report path");
  invariance->add_option("--manifest", ia.manifest, "manifest path");

  FigureArgs ga;
  auto* figure = app.add_subcommand("figure", "draw fig1-left or fig1-right as SVG with CSV sidecars");
  figure->add_option("--name", ga.name, "fig1-left | fig1-right")->required();
  figure->add_option("--out", ga.out, "SVG path (default <name>.svg)");
  figure->add_option("--n", ga.n, "samples per curve");
  figure->add_option("--manifest", ga.manifest, "manifest path");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run the property suites");
  verify->add_option("--suite", va.suite, "all | exact | flow | invariance");
  verify->add_flag("--flip-adot", va.flip_adot, "negate a-dot in the analytic S_t (the suite must fail)");
  verify->add_option("--json", va.json_out, "machine-readable summary");
  verify->add_option("--manifest", va.manifest, "manifest path");

  std::string replay_path;
  auto* replay = app.add_subcommand("replay", "re-run the invocation recorded in a manifest");
  replay->add_option("manifest", replay_path, "manifest file")->required()->check(CLI::ExistingFile);

  std::vector<const char*> argv{"schwarzflow"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Invocation inv;
  inv.args = args;
  for (auto* sub : app.get_subcommands()) {
    inv.command = sub->get_name();
    inv.parameters = collect_parameters(sub);
  }

  try {
    if (*sample) return cmd_sample(sa, inv);
    if (*residual) return cmd_residual(ra, inv);
    if (*flow) return cmd_flow(fa, inv);
    if (*compare) return cmd_compare(ca, inv);
    if (*invariance) return cmd_invariance(ia, inv);
    if (*figure) return cmd_figure(ga, inv);
    if (*verify) return cmd_verify(va, inv);
    if (*replay) {
      const json m = json::parse(read_file(replay_path));
      const auto recorded = m.at("args").get<std::vector<std::string>>();
      if (!recorded.empty() && recorded.front() == "replay")
        throw std::invalid_argument("manifest records a replay; refusing to recurse");
      return run_cli(recorded);
    }
  } catch (const OutOfWindowError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalBlowupError& e) {
    std::cerr << "numerical blow-up: " << e.what() << "\n";
    return kExitBlowup;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace schwarzflow::io
