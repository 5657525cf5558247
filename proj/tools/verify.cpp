#include "verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "schwarzflow/exact_solutions.hpp"
#include "schwarzflow/flow_engine.hpp"
#include "schwarzflow/schwarz_calculus.hpp"

namespace schwarzflow::io {
namespace {

constexpr double kPi = std::numbers::pi;

struct Measured {
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

Measured below(double value, double tol, std::string detail = {}) {
  return {value, tol, value < tol, std::move(detail)};
}

using Property = std::pair<std::string, std::function<Measured()>>;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// Low-discrepancy points in [0, 1); deterministic by design.
double weyl(std::size_t k, double alpha) {
  const double x = static_cast<double>(k + 1) * alpha;
  return x - std::floor(x);
}

struct Case {
  FamilySpec spec;
  double t;
};

std::string case_name(const Case& c) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << to_string(c.spec.family) << "(t=" << c.t << ")";
  return os.str();
}

const std::vector<Case>& pde_cases() {
  static const std::vector<Case> cases = {
      {{Family::circle}, 0.0},      {{Family::circle, 2.0}, 1.0},  {{Family::grim_reaper}, 0.0},
      {{Family::paperclip}, -3.0},  {{Family::paperclip}, -1.0},   {{Family::paperclip}, -0.1},
      {{Family::hairclip}, -3.0},   {{Family::hairclip}, 0.0},     {{Family::hairclip}, 2.0},
  };
  return cases;
}

const std::vector<Case>& fd_cases() {
  static const std::vector<Case> cases = {
      {{Family::circle}, 0.0},
      {{Family::grim_reaper}, 0.0},
      {{Family::paperclip}, -1.0},
      {{Family::hairclip}, 0.0},
  };
  return cases;
}

// Worst |S - conj z| over 64 (t, theta) draws inside each family's domain.
Measured on_curve_draws() {
  double worst = 0.0;
  for (auto fam : {Family::circle, Family::grim_reaper, Family::paperclip, Family::hairclip}) {
    const FamilySpec spec{fam};
    for (std::size_t k = 0; k < 64; ++k) {
      const double u = weyl(k, 0.6180339887498949), v = weyl(k, 0.7548776662466927);
      double t = 0.0, th = 0.0;
      switch (fam) {
        case Family::circle: t = -1.0 + 1.45 * u; th = -kPi + 2.0 * kPi * v; break;
        case Family::grim_reaper: t = -5.0 + 10.0 * u; th = (kPi - 0.05) * (2.0 * v - 1.0); break;
        case Family::paperclip: t = -5.0 + 4.99 * u; th = -kPi + 2.0 * kPi * v; break;
        case Family::hairclip: t = -5.0 + 10.0 * u; th = 3.0 * kPi * (2.0 * v - 1.0); break;
      }
      worst = std::max(worst, std::abs(schwarz_eval(spec, t, th) - std::conj(eval_point(spec, t, th))));
    }
  }
  return below(worst, 1e-12);
}

Measured worst_over(const std::vector<Case>& cases, double tol,
                    const std::function<double(const Case&)>& f) {
  double worst = 0.0;
  std::string where;
  for (const auto& c : cases) {
    const double r = f(c);
    if (!(r <= worst)) {
      worst = r;
      where = case_name(c);
    }
  }
  return below(worst, tol, "worst " + where);
}

Measured implicit_all() {
  const std::vector<Case> cases = {
      {{Family::circle}, 0.2},      {{Family::grim_reaper}, 0.5}, {{Family::paperclip}, -3.0},
      {{Family::paperclip}, -1.0},  {{Family::paperclip}, -0.1},  {{Family::hairclip}, -3.0},
      {{Family::hairclip}, 0.0},    {{Family::hairclip}, 2.0},
  };
  return worst_over(cases, 1e-12, [](const Case& c) {
    const auto r = default_theta_range(c.spec);
    const auto s = sample_family(c.spec, c.t, 512, r.lo, r.hi);
    double w = 0.0;
    for (const auto& p : s.points) w = std::max(w, std::abs(implicit_residual(c.spec, c.t, p.z)));
    return w;
  });
}

Measured ode_laws() {
  double exact = 0.0, fd = 0.0;
  // The paperclip's third derivative of a(t) grows without bound as t -> 0 and
  // the dt = 1e-4 truncation error alone passes 1e-8 near t = -0.5, so the
  // difference check stops at t = -1.
  for (double t : {-5.0, -3.0, -2.0, -1.0}) fd = std::max(fd, ode_fd_residual({Family::paperclip}, t, 1e-4));
  for (double t : {-5.0, -3.0, -1.0, -0.5, -0.1, -0.01})
    exact = std::max(exact, ode_residual({Family::paperclip}, t));
  for (double t : {-3.0, -1.0, 0.0, 1.0, 3.0}) {
    exact = std::max(exact, ode_residual({Family::hairclip}, t));
    fd = std::max(fd, ode_fd_residual({Family::hairclip}, t, 1e-4));
  }
  for (double a0 : {1.0, 2.0}) exact = std::max(exact, ode_residual({Family::circle, a0}, 0.1));
  Measured m = below(std::max(exact / 1e-12, fd / 1e-8), 1.0);
  m.detail = "closed form " + fmt(exact) + ", centered difference " + fmt(fd);
  return m;
}

// Worst deviation of grid-doubling ratios from 4 for one FD residual.
Measured convergence(const std::function<double(const Case&, std::size_t)>& residual) {
  double worst = 0.0;
  std::string detail;
  for (const auto& c : fd_cases()) {
    double prev = residual(c, 64);
    detail += case_name(c) + ":";
    for (std::size_t n : {128u, 256u, 512u}) {
      const double cur = residual(c, n);
      const double ratio = prev / cur;
      worst = std::max(worst, std::abs(ratio - 4.0));
      detail += " " + fmt(ratio).substr(0, 5);
      prev = cur;
    }
    detail += "; ";
  }
  return below(worst, 0.5, detail);
}

Measured branch_continuity() {
  double worst = 0.0;
  for (const auto& c : pde_cases()) {
    const auto r = default_theta_range(c.spec);
    const auto s = sample_family_arclength(c.spec, c.t, 512, r.lo, r.hi);
    Complex prev{};
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto j = schwarz_jet(c.spec, c.t, s.points[i].theta, EvalMode::analytic);
      if (i > 0) worst = std::max(worst, std::abs(std::arg(j.sqrt_S_z / prev)));
      prev = j.sqrt_S_z;
    }
  }
  return below(worst, kPi / 2, "largest adjacent phase jump of sqrt(S_z)");
}

Measured symmetries() {
  double pc = 0.0, hc_conj = 0.0, hc_glide = 0.0;
  for (double t : {-3.0, -1.0, -0.1}) {
    const auto s = sample_family({Family::paperclip}, t, 512, -kPi, kPi);
    for (const auto& p : s.points)
      pc = std::max(pc, std::abs(implicit_residual({Family::paperclip}, t, -std::conj(p.z))));
  }
  for (double t : {-3.0, 0.0, 2.0}) {
    const auto s = sample_family({Family::hairclip}, t, 512, -kPi, kPi);
    for (const auto& p : s.points) {
      hc_conj = std::max(hc_conj, std::abs(implicit_residual({Family::hairclip}, t, std::conj(p.z))));
      hc_glide = std::max(hc_glide, std::abs(implicit_residual({Family::hairclip}, t,
                                                               -std::conj(p.z) + Complex(0.0, kPi))));
    }
  }
  const double worst = std::max({pc, hc_conj, hc_glide});
  return below(worst, 1e-12, "paperclip mirror " + fmt(pc) + ", hairclip conjugate " + fmt(hc_conj) +
                                 ", hairclip glide " + fmt(hc_glide));
}

Measured circle_scaling_covariance() {
  double worst = 0.0;
  const double lam = 2.0;
  for (double tau : {-0.5, 0.0, 0.2, 0.45})
    for (int k = 0; k < 16; ++k) {
      const double th = -kPi + 2.0 * kPi * k / 16.0;
      const Complex big = eval_point({Family::circle, lam}, lam * lam * tau, th);
      const Complex small = eval_point({Family::circle, 1.0}, tau, th);
      worst = std::max(worst, std::abs(big - lam * small));
    }
  return below(worst, 1e-15, "lambda = 2");
}

}  // namespace

double ancient_limit_error(double t) {
  const FamilySpec pc{Family::paperclip};
  const Complex tip = eval_point(pc, t, 0.0);
  double worst = 0.0;
  for (int k = -100; k <= 100; ++k) {
    const Complex z = eval_point(pc, t, 0.01 * k);
    // Grim reaper at t = 0 through its own tip: x - x_tip = -log cos y.
    worst = std::max(worst, std::abs((z.real() - tip.real()) + std::log(std::cos(z.imag()))));
  }
  return worst;
}

double terminal_limit_error(double t) {
  const auto s = sample_family({Family::paperclip}, t, 512, -kPi, kPi);
  double r = 0.0;
  for (const auto& p : s.points) r = std::max(r, std::abs(p.z));
  double worst = 0.0;
  for (const auto& p : s.points) worst = std::max(worst, std::abs(std::abs(p.z) / r - 1.0));
  return worst;
}

namespace {

std::vector<Property> exact_properties(const VerifyOptions& opts) {
  ResidualOptions ro;
  ro.flip_adot = opts.flip_adot;
  std::vector<Property> p;
  p.emplace_back("on_curve_identity", on_curve_draws);
  p.emplace_back("pde_residual", [ro] {
    return worst_over(pde_cases(), 1e-10, [&](const Case& c) {
      return pde_residual(c.spec, c.t, 512, EvalMode::analytic, ro).max_abs;
    });
  });
  p.emplace_back("heat_residual", [ro] {
    return worst_over(pde_cases(), 1e-10, [&](const Case& c) {
      return heat_residual(c.spec, c.t, 512, EvalMode::analytic, ro).max_abs;
    });
  });
  p.emplace_back("kappa_equals_vn", [ro] {
    return worst_over(pde_cases(), 1e-12, [&](const Case& c) {
      return curvature_velocity_residual(c.spec, c.t, 512, ro).max_abs;
    });
  });
  p.emplace_back("implicit_residual", implicit_all);
  p.emplace_back("ode_certificate", ode_laws);
  p.emplace_back("reaper_functional_equation", [] { return below(reaper_functional_residual(512).max_abs, 1e-8); });
  p.emplace_back("branch_continuity", branch_continuity);
  p.emplace_back("symmetry", symmetries);
  p.emplace_back("circle_scaling_covariance", circle_scaling_covariance);
  p.emplace_back("ancient_limit", [] { return below(ancient_limit_error(-10.0), 1e-6, "t = -10, |theta| <= 1"); });
  p.emplace_back("terminal_limit", [] { return below(terminal_limit_error(-1e-3), 2e-2, "t = -1e-3"); });
  p.emplace_back("fd_convergence_pde", [] {
    return convergence([](const Case& c, std::size_t n) {
      return pde_residual(c.spec, c.t, n, EvalMode::finite_difference).max_abs;
    });
  });
  p.emplace_back("fd_convergence_heat", [] {
    return convergence([](const Case& c, std::size_t n) {
      return heat_residual(c.spec, c.t, n, EvalMode::finite_difference).max_abs;
    });
  });
  p.emplace_back("fd_convergence_curvature", [] {
    return convergence([](const Case& c, std::size_t n) { return curvature_vs_geometric(c.spec, c.t, n).max_abs; });
  });
  return p;
}

double mean_radius(const CurveSamples& c) {
  double s = 0.0;
  for (const auto& p : c.points) s += std::abs(p.z);
  return s / static_cast<double>(c.size());
}

bool length_decreases(const std::vector<FlowState>& cps) {
  for (std::size_t i = 1; i < cps.size(); ++i)
    if (!(cps[i].diagnostics.length < cps[i - 1].diagnostics.length)) return false;
  return true;
}

std::vector<Property> flow_properties() {
  std::vector<Property> p;
  p.emplace_back("circle_radius", [] {
    FlowConfig cfg;
    cfg.t_end = 0.3;
    const auto r = run(make_circle(256, 1.0), cfg);
    const double err = std::abs(mean_radius(r.checkpoints.back().curve) - std::sqrt(0.4));
    const double sup = compare_to_oracle(r.checkpoints, {Family::circle}, {-kPi, kPi}).back().sup_distance;
    Measured m = below(std::max(err, sup), 1e-3);
    m.detail = "radius error " + fmt(err) + ", sup distance " + fmt(sup);
    return m;
  });
  p.emplace_back("circle_collapse_time", [] {
    FlowConfig cfg;
    cfg.t_end = 1.0;
    cfg.stop_spacing = 1e-5;
    const auto r = run(make_circle(256, 1.0), cfg);
    const double tc = r.checkpoints.back().t;
    Measured m = below(std::abs(tc / 0.5 - 1.0), 0.01);
    m.passed = m.passed && r.reason == StopReason::stop_area;
    m.detail = "stopped at t = " + fmt(tc) + " (" + std::string(to_string(r.reason)) + ")";
    return m;
  });
  p.emplace_back("area_law", [] {
    const FamilySpec pc{Family::paperclip};
    FlowConfig cfg;
    cfg.n = 512;
    cfg.t_start = -3.0;
    cfg.t_end = -1.0;
    std::vector<double> marks;
    for (int k = 1; k < 20; ++k) marks.push_back(-3.0 + 0.1 * k);
    const auto r = run(sample_family_arclength(pc, -3.0, 512, -kPi, kPi), cfg, marks);
    std::vector<double> t, a;
    for (const auto& s : r.checkpoints) {
      t.push_back(s.t);
      a.push_back(*s.diagnostics.area);
    }
    const double slope = fitted_slope(t, a);
    Measured m = below(std::abs(slope / (-2.0 * kPi) - 1.0), 0.005);
    m.passed = m.passed && length_decreases(r.checkpoints);
    m.detail = "dA/dt = " + fmt(slope) + ", length monotone " + (length_decreases(r.checkpoints) ? "yes" : "no");
    return m;
  });
  p.emplace_back("reaper_translation", [] {
    const FamilySpec g{Family::grim_reaper};
    const double lo = -kPi + 0.2, hi = kPi - 0.2;
    FlowConfig cfg;
    cfg.t_end = 1.0;
    cfg.end_condition = EndCondition::oracle_pinned;
    cfg.oracle = g;
    cfg.pin_theta_lo = lo;
    cfg.pin_theta_hi = hi;
    const auto r = run(sample_family_arclength(g, 0.0, 256, lo, hi), cfg, {0.25, 0.5, 0.75});
    double sup = 0.0;
    for (const auto& c : compare_to_oracle(r.checkpoints, g, {lo, hi}, 0.05)) sup = std::max(sup, c.sup_distance);
    const double adv = leftmost_x(r.checkpoints.back().curve) - leftmost_x(r.checkpoints.front().curve);
    Measured m = below(sup, 5e-3);
    m.passed = m.passed && std::abs(adv - 1.0) < 0.01;
    m.detail = "tip advance " + fmt(adv) + ", sup distance " + fmt(sup);
    return m;
  });
  p.emplace_back("hairclip_pinned", [] {
    const FamilySpec h{Family::hairclip};
    const double lo = -kPi + 0.2, hi = kPi - 0.2;
    FlowConfig cfg;
    cfg.n = 512;
    cfg.t_start = -1.0;
    cfg.t_end = 0.0;
    cfg.end_condition = EndCondition::oracle_pinned;
    cfg.oracle = h;
    cfg.pin_theta_lo = lo;
    cfg.pin_theta_hi = hi;
    const auto r = run(sample_family_arclength(h, -1.0, 512, lo, hi), cfg, {-0.5});
    double sup = 0.0;
    for (const auto& c : compare_to_oracle(r.checkpoints, h, {lo, hi})) sup = std::max(sup, c.sup_distance);
    return below(sup, 5e-3);
  });
  p.emplace_back("round_point", [] {
    FlowConfig cfg;
    cfg.t_end = 10.0;
    cfg.stop_area = 0.05;
    const auto r = run(make_ellipse(256, 2.0, 1.0), cfg, {0.1, 0.2, 0.4, 0.6, 0.8});
    const double iso = *r.checkpoints.back().diagnostics.isoperimetric;
    Measured m = below(iso - 1.0, 0.01);
    m.passed = m.passed && length_decreases(r.checkpoints);
    m.detail = "final L^2/(4 pi A) = " + fmt(iso);
    return m;
  });
  p.emplace_back("flow_convergence", [] {
    std::vector<double> d;
    for (std::size_t n : {64u, 128u, 256u}) {
      FlowConfig cfg;
      cfg.n = n;
      cfg.t_end = 0.3;
      const auto r = run(make_circle(n, 1.0), cfg);
      d.push_back(compare_to_oracle(r.checkpoints, {Family::circle}, {-kPi, kPi}).back().sup_distance);
    }
    const double r1 = d[0] / d[1], r2 = d[1] / d[2];
    Measured m;
    m.value = std::max(std::abs(r1 - 4.0), std::abs(r2 - 4.0));
    m.tolerance = 1.0;
    m.passed = r1 >= 3.0 && r1 <= 5.0 && r2 >= 3.0 && r2 <= 5.0;
    m.detail = "ratios " + fmt(r1) + ", " + fmt(r2);
    return m;
  });
  p.emplace_back("determinism", [] {
    FlowConfig cfg;
    cfg.t_end = 0.05;
    const auto e = make_ellipse(128, 1.5, 1.0);
    const auto a = run(e, cfg, {0.02}), b = run(e, cfg, {0.02});
    double diff = 0.0;
    bool same = a.checkpoints.size() == b.checkpoints.size();
    for (std::size_t k = 0; same && k < a.checkpoints.size(); ++k) {
      const auto& pa = a.checkpoints[k].curve.points;
      const auto& pb = b.checkpoints[k].curve.points;
      same = pa.size() == pb.size() && a.checkpoints[k].t == b.checkpoints[k].t;
      for (std::size_t i = 0; same && i < pa.size(); ++i)
        if (pa[i].z != pb[i].z) diff = std::max(diff, std::abs(pa[i].z - pb[i].z));
    }
    Measured m;
    m.value = diff;
    m.tolerance = 0.0;
    m.passed = same && diff == 0.0;
    m.detail = "bitwise comparison of two runs";
    return m;
  });
  p.emplace_back("line_stationary", [] {
    FlowConfig cfg;
    cfg.n = 64;
    cfg.t_end = 1.0;
    cfg.end_condition = EndCondition::oracle_pinned;
    const auto seg = make_segment(64, {-1.0, 0.5}, {2.0, 1.5});
    FlowState s;
    s.curve = seg;
    s.diagnostics = compute_diagnostics(seg);
    for (int k = 0; k < 100; ++k) s = step(s, cfg);
    double worst = 0.0;
    for (std::size_t i = 0; i < seg.size(); ++i)
      worst = std::max(worst, std::abs(s.curve.points[i].z - seg.points[i].z));
    return below(worst, 1e-12, "100 steps, pinned ends");
  });
  return p;
}

std::vector<Property> invariance_properties() {
  std::vector<Property> p;
  p.emplace_back("scaling_lambda_2", [] {
    FlowConfig cfg;
    cfg.t_end = 0.2;
    return below(invariance_test(InvarianceKind::scaling, 2.0, make_circle(256, 1.0), cfg).sup_distance, 2e-3);
  });
  p.emplace_back("rotation_sigma_1", [] {
    FlowConfig cfg;
    cfg.t_end = 0.2;
    return below(invariance_test(InvarianceKind::rotation, 1.0, make_ellipse(256, 2.0, 1.0), cfg).sup_distance, 5e-3);
  });
  p.emplace_back("scaling_identity", [] {
    FlowConfig cfg;
    cfg.t_end = 0.2;
    return below(invariance_test(InvarianceKind::scaling, 1.0, make_ellipse(128, 2.0, 1.0), cfg).sup_distance, 1e-12);
  });
  p.emplace_back("pde_rotation_invariance", [] {
    const double base = pde_residual({Family::circle}, 0.0, 256, EvalMode::finite_difference).max_abs;
    double worst = 0.0;
    for (double sigma : {0.3, 1.0, 2.5}) {
      FamilySpec rot{Family::circle};
      rot.rotation = sigma;
      worst = std::max(worst, std::abs(pde_residual(rot, 0.0, 256, EvalMode::finite_difference).max_abs - base));
    }
    return below(worst, 1e-9, "circle, FD jets, sigma in {0.3, 1, 2.5}");
  });
  return p;
}

void run_properties(const std::string& suite, const std::vector<Property>& props,
                    std::vector<PropertyCheck>& out) {
  for (const auto& [name, fn] : props) {
    PropertyCheck c;
    c.suite = suite;
    c.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Measured m = fn();
      c.passed = m.passed;
      c.value = m.value;
      c.tolerance = m.tolerance;
      c.detail = m.detail;
    } catch (const std::exception& e) {
      c.passed = false;
      c.detail = std::string("exception: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(c));
  }
}

}  // namespace

std::vector<PropertyCheck> run_suite(std::string_view suite, const VerifyOptions& opts) {
  const bool all = suite == "all";
  if (!all && suite != "exact" && suite != "flow" && suite != "invariance")
    throw std::invalid_argument("unknown suite '" + std::string(suite) + "' (all | exact | flow | invariance)");
  std::vector<PropertyCheck> out;
  if (all || suite == "exact") run_properties("exact", exact_properties(opts), out);
  if (all || suite == "flow") run_properties("flow", flow_properties(), out);
  if (all || suite == "invariance") run_properties("invariance", invariance_properties(), out);
  return out;
}

std::string summary_table(const std::vector<PropertyCheck>& checks) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-11s %-28s %-5s %-10s %-10s %s\n", "suite", "property", "ok", "value",
                "tolerance", "detail");
  out += line;
  std::size_t failed = 0;
  for (const auto& c : checks) {
    std::snprintf(line, sizeof line, "%-11s %-28s %-5s %-10s %-10s ", c.suite.c_str(), c.name.c_str(),
                  c.passed ? "PASS" : "FAIL", fmt(c.value).c_str(), fmt(c.tolerance).c_str());
    out += line;
    out += c.detail + "\n";
    if (!c.passed) ++failed;
  }
  out += std::to_string(checks.size() - failed) + "/" + std::to_string(checks.size()) + " properties passed\n";
  if (failed > 0) {
    out += "failed:";
    for (const auto& c : checks)
      if (!c.passed) out += " " + c.name;
    out += "\n";
  }
  return out;
}

json summary_json(const std::vector<PropertyCheck>& checks) {
  json j;
  json arr = json::array();
  bool ok = true;
  for (const auto& c : checks) {
    ok = ok && c.passed;
    arr.push_back({{"suite", c.suite},
                   {"property", c.name},
                   {"passed", c.passed},
                   {"value", c.value},
                   {"tolerance", c.tolerance},
                   {"detail", c.detail}});
  }
  j["passed"] = ok;
  j["properties"] = std::move(arr);
  return j;
}

}  // namespace schwarzflow::io
