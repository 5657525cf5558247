#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "schwarzflow/curve_geometry.hpp"
#include "schwarzflow/errors.hpp"
#include "schwarzflow/exact_solutions.hpp"

namespace schwarzflow {

enum class EndCondition {
  free,           // one-sided stencils, ends move with the flow
  oracle_pinned,  // ends follow the oracle; held in place when there is none
};

struct FlowConfig {
  std::size_t n = 256;
  double cfl = 0.25;  // dt = cfl * (min spacing)^2
  std::size_t resample_every = 5;
  double t_start = 0.0;
  double t_end = 0.0;
  double stop_area = 1e-3;
  double stop_spacing = 1e-3;
  EndCondition end_condition = EndCondition::free;
  std::optional<FamilySpec> oracle;
  /// Parameters of the two pinned ends on the oracle curve.
  double pin_theta_lo = 0.0;
  double pin_theta_hi = 0.0;

  /// Throws std::invalid_argument unless 0 < cfl <= 0.5, n >= 32, stop_area > 0.
  void validate() const;
};

struct FlowDiagnostics {
  double length = 0.0;
  std::optional<double> area;  // closed curves only
  double max_kappa = 0.0;      // max |kappa|
  std::optional<double> isoperimetric;
};

struct FlowState {
  CurveSamples curve;
  double t = 0.0;
  std::size_t step = 0;
  FlowDiagnostics diagnostics;
};

FlowDiagnostics compute_diagnostics(const CurveSamples& curve);

/// One explicit Euler step z += dt * kappa * n with dt = cfl * h_min^2 (capped
/// by `dt_cap`). Throws NeedsResampleError if the minimum marker gap is below
/// stop_spacing and NumericalBlowupError on non-finite curvature.
FlowState step(const FlowState& state, const FlowConfig& config,
               double dt_cap = std::numeric_limits<double>::infinity());

enum class StopReason { t_end, stop_area, stop_spacing };
std::string_view to_string(StopReason r);

struct FlowResult {
  /// Initial state, every requested checkpoint time reached, and the final state.
  std::vector<FlowState> checkpoints;
  StopReason reason = StopReason::t_end;
};

/// Thrown by run() on blow-up; carries everything recorded before it.
class FlowBlowupError : public NumericalBlowupError {
 public:
  FlowBlowupError(const std::string& what, std::vector<FlowState> checkpoints)
      : NumericalBlowupError(what), checkpoints_(std::move(checkpoints)) {}
  [[nodiscard]] const std::vector<FlowState>& checkpoints() const { return checkpoints_; }

 private:
  std::vector<FlowState> checkpoints_;
};

/// Flows `initial` (resampled to config.n markers) from t_start towards t_end,
/// resampling every resample_every steps. Stops early on stop_area (closed
/// curves) or when resampling cannot restore stop_spacing.
FlowResult run(const CurveSamples& initial, const FlowConfig& config,
               const std::vector<double>& checkpoint_times = {});

struct OracleComparison {
  double t = 0.0;
  double sup_distance = 0.0;
};

/// Sup over markers of the distance to a 16x denser arclength sampling of the
/// oracle over [theta_lo, theta_hi]. `exclude_fraction` drops that share of
/// markers at each end of open curves.
std::vector<OracleComparison> compare_to_oracle(const std::vector<FlowState>& checkpoints,
                                                const FamilySpec& oracle, ThetaRange range,
                                                double exclude_fraction = 0.0);

enum class InvarianceKind { scaling, rotation };

struct InvarianceReport {
  InvarianceKind kind = InvarianceKind::scaling;
  double parameter = 1.0;  // lambda or sigma
  double tau = 0.0;
  double sup_distance = 0.0;
};

/// Scaling: flow base to tau and lambda*base to lambda^2 tau, compare
/// lambda*(first) with the second. Rotation: compare the flow of e^{i sigma}
/// base with e^{i sigma} times the flow of base. tau = config.t_end - t_start.
InvarianceReport invariance_test(InvarianceKind kind, double parameter, const CurveSamples& base,
                                 const FlowConfig& config);

/// Least-squares slope of y against t.
double fitted_slope(const std::vector<double>& t, const std::vector<double>& y);

/// Smallest x on the curve, refined by a parabola through the extreme marker
/// and its neighbours (in y).
double leftmost_x(const CurveSamples& curve);

}  // namespace schwarzflow
