#pragma once

#include <string>
#include <utility>
#include <vector>

#include "schwarzflow/exact_solutions.hpp"

namespace schwarzflow {

enum class EvalMode { analytic, finite_difference };

std::string_view to_string(EvalMode m);
EvalMode parse_mode(std::string_view name);  // "analytic" | "fd" | "finite_difference"

/// Schwarz function and its derivatives at one curve point. `sqrt_S_z` is the
/// branch of (S_z)^{1/2} equal to the conjugate unit tangent in the direction
/// of increasing theta, so that the circle has curvature +1/a.
struct SchwarzJet {
  Complex S{}, S_z{}, S_zz{}, S_t{};
  Complex sqrt_S_z{};
  CurvePoint at{};
  EvalMode mode = EvalMode::analytic;
};

struct PointResidual {
  double theta = 0.0;
  double residual = 0.0;
};

struct ResidualReport {
  std::string identity;
  double max_abs = 0.0;
  std::vector<PointResidual> per_point;
  EvalMode mode = EvalMode::analytic;
  std::size_t n = 0;
  /// Grid spacing the residual was computed on (arclength for FD modes, 0 for
  /// purely analytic checks).
  double h = 0.0;
  /// Named sub-checks folded into max_abs, for identities made of several parts.
  std::vector<std::pair<std::string, double>> components;

  void add(double theta, double r);
};

struct ResidualOptions {
  /// Width of the excluded theta band at the grim reaper's log singularities.
  double singular_band = kDefaultSingularBand;
  /// Time step of the centered S_t difference in finite-difference mode.
  double fd_dt = 1e-5;
  /// Negates a-dot inside S_t. Used only to prove the verification suite
  /// catches a wrong ODE.
  bool flip_adot = false;
};

/// S at z(theta); equals conj(eval_point(spec, t, theta)).
Complex schwarz_eval(const FamilySpec& spec, double t, double theta);

/// Jet at theta. Analytic mode uses the closed forms; finite-difference mode
/// takes chain-rule differences along the curve with arclength step `ds` and
/// gets S_t at fixed z from t +/- dt with a Newton correction of theta.
/// Throws ResolutionError when fewer than 32 grid points are implied.
SchwarzJet schwarz_jet(const FamilySpec& spec, double t, double theta, EvalMode mode,
                       double ds = 0.0, const ResidualOptions& opts = {});

/// Arclength step used by finite-difference jets on an n-point grid over the
/// family's default parameter range.
double fd_arclength_step(const FamilySpec& spec, double t, std::size_t n,
                         const ResidualOptions& opts = {});

/// max |S_t S_z - S_zz| over n samples (analytic: equispaced theta; FD:
/// equispaced arclength).
ResidualReport pde_residual(const FamilySpec& spec, double t, std::size_t n, EvalMode mode,
                            const ResidualOptions& opts = {});

struct SchwarzScalar {
  double value = 0.0;
  double imag = 0.0;  // should vanish; reported as a diagnostic
};

/// kappa = (i/2) S_zz / (S_z)^{3/2}.
SchwarzScalar curvature_schwarz(const SchwarzJet& jet);
/// v_n = (i/2) S_t / (S_z)^{1/2}.
SchwarzScalar normal_velocity_schwarz(const SchwarzJet& jet);

/// Arclength heat form S_t = 2 S_ss. Analytic mode checks the chain-rule
/// reduction S_ss = S_zz / (2 S_z); FD mode differences S twice in arclength.
ResidualReport heat_residual(const FamilySpec& spec, double t, std::size_t n, EvalMode mode,
                             const ResidualOptions& opts = {});

/// Checks for the reaper's functional-differential equation with the gauge
/// alpha = theta/2, h(theta) = -(1 + i tan(theta/2))/2.
ResidualReport reaper_functional_residual(std::size_t n, double band = kDefaultSingularBand);

/// |a-dot - a(a^2-1)| (paperclip, hairclip), |a a-dot + 1| (circle), |a-dot| (reaper).
double ode_residual(const FamilySpec& spec, double t);
/// |centered difference of a(t) - a-dot| with step dt.
double ode_fd_residual(const FamilySpec& spec, double t, double dt = 1e-4);

/// max |S(theta) - conj(z(theta))| over n equispaced parameters.
ResidualReport on_curve_residual(const FamilySpec& spec, double t, std::size_t n,
                                 const ResidualOptions& opts = {});

/// max |kappa_schwarz - kappa_discrete| on n arclength-equispaced samples.
/// Open curves skip the outer 5% of samples at each end.
ResidualReport curvature_vs_geometric(const FamilySpec& spec, double t, std::size_t n,
                                      const ResidualOptions& opts = {});

/// max |kappa - v_n| over n samples (analytic jets).
ResidualReport curvature_velocity_residual(const FamilySpec& spec, double t, std::size_t n,
                                           const ResidualOptions& opts = {});

}  // namespace schwarzflow
