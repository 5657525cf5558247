#pragma once

#include <limits>
#include <string>
#include <string_view>

#include "schwarzflow/curve_geometry.hpp"

namespace schwarzflow {

enum class Family { circle, grim_reaper, paperclip, hairclip };

std::string_view to_string(Family f);
/// Accepts "circle", "grim_reaper" (or "grim-reaper", "reaper"), "paperclip",
/// "hairclip". Throws std::invalid_argument otherwise.
Family parse_family(std::string_view name);

/// One of the four fundamental curve-shortening solutions, all written as
///   z = -log(a(t) + e^{i theta}) + g(t)
/// (circle: z = a(t) e^{i theta}), optionally moved by a rigid motion
/// z -> e^{i rotation} z + translation.
struct FamilySpec {
  Family family = Family::circle;
  double a0 = 1.0;         // circle initial radius
  Complex translation{};   // rigid shift (free real constant of the reaper)
  double rotation = 0.0;   // rigid rotation angle
};

/// Open time interval on which a family is defined.
struct TimeWindow {
  double t_min = -std::numeric_limits<double>::infinity();
  double t_max = std::numeric_limits<double>::infinity();

  [[nodiscard]] bool contains(double t) const { return t > t_min && t < t_max; }
  [[nodiscard]] std::string describe() const;
};

TimeWindow valid_window(const FamilySpec& spec);

/// Throws OutOfWindowError (message names the valid interval) unless t is
/// inside the family's window.
void check_window(const FamilySpec& spec, double t);

/// a(t): circle sqrt(a0^2 - 2t); paperclip 1/sqrt(1 - e^{2t});
/// hairclip 1/sqrt(1 + e^{2t}); grim reaper 1.
double family_a(const FamilySpec& spec, double t);

/// da/dt. Paperclip and hairclip return a(a^2 - 1); the circle -1/a; the grim
/// reaper 0.
double family_a_dot(const FamilySpec& spec, double t);

/// Centering constant g(t): paperclip log(a^2-1)/2, hairclip log(1-a^2)/2,
/// grim reaper t, circle 0.
double family_g(const FamilySpec& spec, double t);

/// Curve point at parameter theta. Throws SingularParameterError where
/// |a + e^{i theta}| < 1e-12 and for grim reaper parameters outside (-pi, pi).
Complex eval_point(const FamilySpec& spec, double t, double theta);

/// Residual of the implicit form at z (the rigid motion is undone first):
///   paperclip   cosh x - e^{-t} cos y
///   hairclip    sinh x + e^{-t} cos y
///   circle      x^2 + y^2 - a^2
///   grim reaper x - t + log(2 cos y)   (DomainError when cos y <= 0)
double implicit_residual(const FamilySpec& spec, double t, Complex z);

/// Parameter range used when a caller does not name one: [0, 2pi) for the
/// circle, [-pi, pi] for paperclip and hairclip, |theta| <= pi - band for the reaper.
struct ThetaRange {
  double lo = 0.0;
  double hi = 0.0;
};
inline constexpr double kDefaultSingularBand = 0.05;
ThetaRange default_theta_range(const FamilySpec& spec, double band = kDefaultSingularBand);

/// True when [lo, hi] spans a full period of a closed family.
bool closes(const FamilySpec& spec, double theta_lo, double theta_hi);

/// n >= 4 samples at equispaced theta. Circle and paperclip over a full period give
/// a closed curve (hi is not repeated); everything else is open with both ends.
CurveSamples sample_family(const FamilySpec& spec, double t, std::size_t n, double theta_lo,
                           double theta_hi);

/// Like sample_family, but the n samples are equispaced in arclength. Needed
/// when theta crowds the curve, e.g. the paperclip tips at early times.
CurveSamples sample_family_arclength(const FamilySpec& spec, double t, std::size_t n,
                                     double theta_lo, double theta_hi);

/// Arclength between two parameters (adaptive quadrature of |dz/dtheta|).
double family_arclength(const FamilySpec& spec, double t, double theta_lo, double theta_hi);

/// dz/dtheta at a real parameter.
Complex eval_tangent(const FamilySpec& spec, double t, double theta);

}  // namespace schwarzflow
