#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "commands.hpp"
#include "figure.hpp"
#include "schwarzflow/flow_engine.hpp"
#include "schwarzflow/schwarz_calculus.hpp"
#include "verify.hpp"

namespace py = pybind11;
using namespace schwarzflow;

namespace {

py::array_t<std::complex<double>> positions(const CurveSamples& c) {
  const auto z = c.positions();
  return py::array_t<std::complex<double>>(static_cast<py::ssize_t>(z.size()), z.data());
}

py::array_t<double> thetas(const CurveSamples& c) {
  py::array_t<double> out(static_cast<py::ssize_t>(c.size()));
  auto v = out.mutable_unchecked<1>();
  for (std::size_t i = 0; i < c.size(); ++i) v(static_cast<py::ssize_t>(i)) = c.points[i].theta;
  return out;
}

CurveSamples curve_from(py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast> z,
                        bool closed) {
  if (z.ndim() != 1) throw std::invalid_argument("positions must be a 1-D complex array");
  return make_samples({z.data(), static_cast<std::size_t>(z.size())}, closed ? Topology::closed : Topology::open);
}

FamilySpec spec_of(const std::string& family, double a0, double rotation, std::complex<double> translation) {
  FamilySpec s;
  s.family = parse_family(family);
  s.a0 = a0;
  s.rotation = rotation;
  s.translation = translation;
  return s;
}

py::dict report_dict(const ResidualReport& r) {
  py::dict d;
  d["identity"] = r.identity;
  d["mode"] = std::string(to_string(r.mode));
  d["n"] = r.n;
  d["h"] = r.h;
  d["max_abs"] = r.max_abs;
  std::vector<double> th, res;
  for (const auto& p : r.per_point) {
    th.push_back(p.theta);
    res.push_back(p.residual);
  }
  d["theta"] = py::array_t<double>(static_cast<py::ssize_t>(th.size()), th.data());
  d["residual"] = py::array_t<double>(static_cast<py::ssize_t>(res.size()), res.data());
  return d;
}

py::dict state_dict(const FlowState& s) {
  py::dict d;
  d["t"] = s.t;
  d["step"] = s.step;
  d["z"] = positions(s.curve);
  d["length"] = s.diagnostics.length;
  d["area"] = s.diagnostics.area ? py::cast(*s.diagnostics.area) : py::none();
  d["max_kappa"] = s.diagnostics.max_kappa;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Schwarz-function curve shortening: exact solutions, identity checks and a marker flow solver";

  // Translators run newest first, so the base class goes in before its subclasses.
  py::register_exception<Error>(m, "SchwarzflowError", PyExc_RuntimeError);
  py::register_exception<OutOfWindowError>(m, "OutOfWindowError", PyExc_ValueError);
  py::register_exception<NumericalBlowupError>(m, "NumericalBlowupError", PyExc_ArithmeticError);

  const auto fam = py::arg("family");
  const auto a0 = py::arg("a0") = 1.0;
  const auto rot = py::arg("rotation") = 0.0;
  const auto shift = py::arg("translation") = std::complex<double>{};

  m.def(
      "window",
      [](const std::string& family, double a0) {
        const auto w = valid_window(spec_of(family, a0, 0.0, {}));
        return py::make_tuple(w.t_min, w.t_max);
      },
      fam, a0, "Open time interval (t_min, t_max) on which the family exists.");

  m.def(
      "sample",
      [](const std::string& family, double t, std::size_t n, std::optional<double> lo, std::optional<double> hi,
         bool arclength, double a0, double rotation, std::complex<double> translation) {
        const auto spec = spec_of(family, a0, rotation, translation);
        const auto r = default_theta_range(spec);
        const double l = lo.value_or(r.lo), h = hi.value_or(r.hi);
        const auto c = arclength ? sample_family_arclength(spec, t, n, l, h) : sample_family(spec, t, n, l, h);
        return py::make_tuple(thetas(c), positions(c), c.closed());
      },
      fam, py::arg("t"), py::arg("n") = 512, py::arg("theta_lo") = py::none(), py::arg("theta_hi") = py::none(),
      py::arg("arclength") = false, a0, rot, shift,
      "Sample an exact solution. Returns (theta, z, closed).");

  m.def(
      "implicit_residual",
      [](const std::string& family, double t, std::complex<double> z, double a0, double rotation,
         std::complex<double> translation) { return implicit_residual(spec_of(family, a0, rotation, translation), t, z); },
      fam, py::arg("t"), py::arg("z"), a0, rot, shift);

  m.def(
      "residual",
      [](const std::string& identity, const std::string& family, double t, std::size_t n, const std::string& mode,
         double a0, bool flip_adot) {
        const auto spec = spec_of(family, a0, 0.0, {});
        ResidualOptions opts;
        opts.flip_adot = flip_adot;
        const EvalMode em = parse_mode(mode);
        if (identity == "pde") return report_dict(pde_residual(spec, t, n, em, opts));
        if (identity == "heat") return report_dict(heat_residual(spec, t, n, em, opts));
        if (identity == "oncurve") return report_dict(on_curve_residual(spec, t, n, opts));
        if (identity == "kappa-vn") return report_dict(curvature_velocity_residual(spec, t, n, opts));
        if (identity == "curvature") return report_dict(curvature_vs_geometric(spec, t, n, opts));
        if (identity == "reaper") return report_dict(reaper_functional_residual(n));
        throw std::invalid_argument("unknown identity '" + identity +
                                    "' (pde | heat | oncurve | kappa-vn | curvature | reaper)");
      },
      py::arg("identity"), fam, py::arg("t"), py::arg("n") = 512, py::arg("mode") = "analytic", a0,
      py::arg("flip_adot") = false, "Check one identity; returns a dict with max_abs and per-point residuals.");

  m.def(
      "ode_residual",
      [](const std::string& family, double t, double a0) { return ode_residual(spec_of(family, a0, 0.0, {}), t); },
      fam, py::arg("t"), a0);

  m.def(
      "area", [](py::array_t<std::complex<double>> z) { return enclosed_area(curve_from(z, true)).signed_area; },
      py::arg("z"), "Signed shoelace area of a closed polygon.");

  m.def(
      "curvature",
      [](py::array_t<std::complex<double>> z, bool closed) {
        const auto k = discrete_curvature(curve_from(z, closed));
        std::vector<double> out;
        for (const auto& s : k) out.push_back(s.kappa);
        return py::array_t<double>(static_cast<py::ssize_t>(out.size()), out.data());
      },
      py::arg("z"), py::arg("closed") = true);

  m.def(
      "resample",
      [](py::array_t<std::complex<double>> z, std::size_t n, bool closed) {
        return positions(resample_uniform_arclength(curve_from(z, closed), n));
      },
      py::arg("z"), py::arg("n"), py::arg("closed") = true);

  m.def(
      "flow",
      [](py::array_t<std::complex<double>> z, double t_end, bool closed, double t_start, std::size_t n, double cfl,
         double stop_area, double stop_spacing, bool pinned, std::vector<double> checkpoints) {
        FlowConfig cfg;
        cfg.n = n;
        cfg.cfl = cfl;
        cfg.t_start = t_start;
        cfg.t_end = t_end;
        cfg.stop_area = stop_area;
        cfg.stop_spacing = stop_spacing;
        cfg.end_condition = pinned ? EndCondition::oracle_pinned : EndCondition::free;
        const auto init = curve_from(z, closed);
        FlowResult r;
        {
          py::gil_scoped_release release;
          r = run(init, cfg, checkpoints);
        }
        py::list states;
        for (const auto& s : r.checkpoints) states.append(state_dict(s));
        py::dict d;
        d["reason"] = std::string(to_string(r.reason));
        d["checkpoints"] = states;
        return d;
      },
      py::arg("z"), py::arg("t_end"), py::arg("closed") = true, py::arg("t_start") = 0.0, py::arg("n") = 256,
      py::arg("cfl") = 0.25, py::arg("stop_area") = 1e-3, py::arg("stop_spacing") = 1e-3, py::arg("pinned") = false,
      py::arg("checkpoints") = std::vector<double>{},
      "Run the marker solver; returns {'reason', 'checkpoints': [{'t', 'z', 'length', 'area', ...}]}.");

  m.def(
      "verify",
      [](const std::string& suite, bool flip_adot) {
        io::VerifyOptions opts;
        opts.flip_adot = flip_adot;
        std::vector<io::PropertyCheck> checks;
        {
          py::gil_scoped_release release;
          checks = io::run_suite(suite, opts);
        }
        py::list out;
        for (const auto& c : checks) {
          py::dict d;
          d["suite"] = c.suite;
          d["name"] = c.name;
          d["passed"] = c.passed;
          d["value"] = c.value;
          d["tolerance"] = c.tolerance;
          d["detail"] = c.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("suite") = "exact", py::arg("flip_adot") = false);

  m.def(
      "cli", [](const std::vector<std::string>& args) { return io::run_cli(args); }, py::arg("args"),
      "Run one command-line invocation in process; returns the exit code.");
}
