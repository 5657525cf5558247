#include "schwarzflow/flow_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace schwarzflow {
namespace {

bool same_time(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

}  // namespace

void FlowConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 0.5)) throw std::invalid_argument("flow: cfl must lie in (0, 0.5]");
  if (n < 32) throw std::invalid_argument("flow: n must be >= 32");
  if (!(stop_area > 0.0)) throw std::invalid_argument("flow: stop_area must be > 0");
  if (!(t_end > t_start)) throw std::invalid_argument("flow: t_end must exceed t_start");
  if (resample_every == 0) throw std::invalid_argument("flow: resample_every must be >= 1");
}

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::t_end: return "t_end";
    case StopReason::stop_area: return "stop_area";
    case StopReason::stop_spacing: return "stop_spacing";
  }
  return "unknown";
}

FlowDiagnostics compute_diagnostics(const CurveSamples& curve) {
  FlowDiagnostics d;
  d.length = curve.total_length;
  for (const auto& k : discrete_curvature(curve)) d.max_kappa = std::max(d.max_kappa, std::abs(k.kappa));
  if (curve.closed()) {
    d.area = enclosed_area(curve).area;
    d.isoperimetric = d.length * d.length / (4.0 * std::numbers::pi * *d.area);
  }
  return d;
}

FlowState step(const FlowState& state, const FlowConfig& config, double dt_cap) {
  const auto& curve = state.curve;
  const double h = min_spacing(curve);
  if (h < config.stop_spacing) throw NeedsResampleError("marker spacing below stop_spacing");
  const double dt = std::min(config.cfl * h * h, dt_cap);

  const auto kappa = discrete_curvature(curve);
  FlowState next;
  next.curve = curve;
  next.t = state.t + dt;
  next.step = state.step + 1;
  auto& pts = next.curve.points;
  const std::size_t n = pts.size();
  const bool pinned = !curve.closed() && config.end_condition == EndCondition::oracle_pinned;
  for (std::size_t i = 0; i < n; ++i) {
    if (pinned && (i == 0 || i + 1 == n)) continue;
    if (!std::isfinite(kappa[i].kappa))
      throw NumericalBlowupError("non-finite curvature at marker " + std::to_string(i));
    pts[i].z += dt * kappa[i].kappa * kappa[i].normal;
  }
  if (pinned && config.oracle) {
    pts.front().z = eval_point(*config.oracle, next.t, config.pin_theta_lo);
    pts.back().z = eval_point(*config.oracle, next.t, config.pin_theta_hi);
  }
  for (const auto& p : pts)
    if (!std::isfinite(p.z.real()) || !std::isfinite(p.z.imag()))
      throw NumericalBlowupError("non-finite marker position");
  try {
    next.curve = cumulative_arclength(std::move(next.curve));
  } catch (const DegenerateCurveError& e) {
    throw NumericalBlowupError(std::string("markers collided: ") + e.what());
  }
  next.diagnostics = compute_diagnostics(next.curve);
  return next;
}

FlowResult run(const CurveSamples& initial, const FlowConfig& config,
               const std::vector<double>& checkpoint_times) {
  config.validate();
  std::vector<double> marks;
  for (double t : checkpoint_times)
    if (t > config.t_start && t < config.t_end) marks.push_back(t);
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
  marks.push_back(config.t_end);

  FlowResult result;
  FlowState state;
  state.curve = resample_uniform_arclength(initial, config.n);
  state.t = config.t_start;
  state.diagnostics = compute_diagnostics(state.curve);
  result.checkpoints.push_back(state);

  std::size_t next_mark = 0;
  std::size_t since_resample = 0;
  auto resample = [&] {
    state.curve = resample_uniform_arclength(state.curve, config.n);
    state.diagnostics = compute_diagnostics(state.curve);
    since_resample = 0;
  };

  try {
    while (true) {
      if (state.curve.closed() && *state.diagnostics.area < config.stop_area) {
        result.reason = StopReason::stop_area;
        break;
      }
      if (since_resample >= config.resample_every) resample();
      const double target = marks[next_mark];
      try {
        state = step(state, config, target - state.t);
      } catch (const NeedsResampleError&) {
        resample();
        if (min_spacing(state.curve) < config.stop_spacing) {
          result.reason = StopReason::stop_spacing;
          break;
        }
        continue;
      }
      ++since_resample;
      if (same_time(state.t, target) || state.t > target) {
        state.t = target;
        if (next_mark + 1 == marks.size()) {
          result.reason = StopReason::t_end;
          break;
        }
        result.checkpoints.push_back(state);
        ++next_mark;
      }
    }
  } catch (const NumericalBlowupError& e) {
    result.checkpoints.push_back(state);
    throw FlowBlowupError(e.what(), std::move(result.checkpoints));
  }
  result.checkpoints.push_back(state);
  return result;
}

std::vector<OracleComparison> compare_to_oracle(const std::vector<FlowState>& checkpoints,
                                                const FamilySpec& oracle, ThetaRange range,
                                                double exclude_fraction) {
  std::vector<OracleComparison> out;
  for (const auto& cp : checkpoints) {
    check_window(oracle, cp.t);
    const std::size_t n = cp.curve.size();
    const auto dense = sample_family_arclength(oracle, cp.t, 16 * n, range.lo, range.hi);
    const auto poly = dense.positions();
    std::size_t skip = 0;
    if (!cp.curve.closed()) skip = static_cast<std::size_t>(std::floor(exclude_fraction * static_cast<double>(n)));
    double sup = 0.0;
    for (std::size_t i = skip; i + skip < n; ++i)
      sup = std::max(sup, point_to_polyline_distance(cp.curve.points[i].z, poly, dense.closed()));
    out.push_back({cp.t, sup});
  }
  return out;
}

InvarianceReport invariance_test(InvarianceKind kind, double parameter, const CurveSamples& base,
                                 const FlowConfig& config) {
  if (!base.closed()) throw TopologyError("invariance_test needs a closed base curve");
  InvarianceReport rep;
  rep.kind = kind;
  rep.parameter = parameter;
  rep.tau = config.t_end - config.t_start;
  const auto first = run(base, config).checkpoints.back();

  if (kind == InvarianceKind::scaling) {
    if (!(parameter > 0.0)) throw std::invalid_argument("scaling factor must be > 0");
    const double lam = parameter;
    FlowConfig scaled = config;
    scaled.t_start = lam * lam * config.t_start;
    scaled.t_end = lam * lam * config.t_end;
    scaled.stop_area = lam * lam * config.stop_area;
    scaled.stop_spacing = lam * config.stop_spacing;
    const auto second = run(transformed(base, lam), scaled).checkpoints.back();
    rep.sup_distance = sup_distance(transformed(first.curve, lam), second.curve);
  } else {
    const Complex rot = std::polar(1.0, parameter);
    const auto second = run(transformed(base, rot), config).checkpoints.back();
    rep.sup_distance = sup_distance(transformed(first.curve, rot), second.curve);
  }
  return rep;
}

double fitted_slope(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size() || t.size() < 2) throw std::invalid_argument("fitted_slope needs >= 2 pairs");
  double mt = 0, my = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    mt += t[i];
    my += y[i];
  }
  mt /= static_cast<double>(t.size());
  my /= static_cast<double>(t.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    sxy += (t[i] - mt) * (y[i] - my);
    sxx += (t[i] - mt) * (t[i] - mt);
  }
  return sxy / sxx;
}

double leftmost_x(const CurveSamples& curve) {
  const auto& p = curve.points;
  std::size_t k = 0;
  for (std::size_t i = 1; i < p.size(); ++i)
    if (p[i].z.real() < p[k].z.real()) k = i;
  if (k == 0 || k + 1 == p.size()) return p[k].z.real();
  // x as a quadratic in y through the three markers around the extreme.
  const double y0 = p[k - 1].z.imag(), y1 = p[k].z.imag(), y2 = p[k + 1].z.imag();
  const double x0 = p[k - 1].z.real(), x1 = p[k].z.real(), x2 = p[k + 1].z.real();
  const double d01 = (x1 - x0) / (y1 - y0), d12 = (x2 - x1) / (y2 - y1);
  const double c2 = (d12 - d01) / (y2 - y0);
  if (!(c2 > 0.0)) return x1;
  const double c1 = d01 - c2 * (y0 + y1);
  const double ystar = -c1 / (2.0 * c2);
  const double c0 = x0 - c1 * y0 - c2 * y0 * y0;
  return c0 + c1 * ystar + c2 * ystar * ystar;
}

}  // namespace schwarzflow
