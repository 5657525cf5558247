#include "schwarzflow/exact_solutions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "family_eval.hpp"
#include "schwarzflow/errors.hpp"

namespace schwarzflow {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

std::string fmt_bound(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "+inf";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::circle: return "circle";
    case Family::grim_reaper: return "grim_reaper";
    case Family::paperclip: return "paperclip";
    case Family::hairclip: return "hairclip";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  if (name == "circle") return Family::circle;
  if (name == "grim_reaper" || name == "grim-reaper" || name == "reaper") return Family::grim_reaper;
  if (name == "paperclip") return Family::paperclip;
  if (name == "hairclip") return Family::hairclip;
  throw std::invalid_argument("unknown family '" + std::string(name) +
                              "' (expected circle, grim_reaper, paperclip, hairclip)");
}

std::string TimeWindow::describe() const {
  return "(" + fmt_bound(t_min) + ", " + fmt_bound(t_max) + ")";
}

TimeWindow valid_window(const FamilySpec& spec) {
  TimeWindow w;
  switch (spec.family) {
    case Family::circle: w.t_max = 0.5 * spec.a0 * spec.a0; break;
    case Family::paperclip: w.t_max = 0.0; break;
    case Family::grim_reaper:
    case Family::hairclip: break;
  }
  return w;
}

void check_window(const FamilySpec& spec, double t) {
  if (spec.family == Family::circle && !(spec.a0 > 0.0))
    throw OutOfWindowError("circle requires a0 > 0");
  const auto w = valid_window(spec);
  if (!std::isfinite(t) || !w.contains(t)) {
    std::ostringstream os;
    os.precision(17);
    os << to_string(spec.family) << ": t = " << t << " is outside the valid window t in "
       << w.describe();
    if (spec.family == Family::paperclip) os << " (ancient solution, t < 0)";
    throw OutOfWindowError(os.str());
  }
}

namespace detail {

FamilyEvaluator::FamilyEvaluator(const FamilySpec& spec, double t, EvalOptions opts)
    : spec_(spec), t_(t), opts_(opts), rot_(std::polar(1.0, spec.rotation)) {
  check_window(spec, t);
  switch (spec.family) {
    case Family::circle: {
      a_ = std::sqrt(spec.a0 * spec.a0 - 2.0 * t);
      adot_ = -1.0 / a_;
      a_minus_1_ = a_ - 1.0;
      a2_minus_1_ = a_ * a_ - 1.0;
      g_ = 0.0;
      break;
    }
    case Family::grim_reaper: {
      a_ = 1.0;
      adot_ = 0.0;
      g_ = t;
      break;
    }
    case Family::paperclip: {
      // a^2 = 1/(1 - e^{2t}), a^2 - 1 = e^{2t}/(1 - e^{2t})
      const double one_minus_e = -std::expm1(2.0 * t);
      a_ = 1.0 / std::sqrt(one_minus_e);
      a2_minus_1_ = std::exp(2.0 * t) / one_minus_e;
      a_minus_1_ = a2_minus_1_ / (a_ + 1.0);
      g_ = t - 0.5 * std::log(one_minus_e);
      adot_ = a_ * a2_minus_1_;
      break;
    }
    case Family::hairclip: {
      // a^2 = 1/(1 + e^{2t}), 1 - a^2 = e^{2t}/(1 + e^{2t})
      double one_minus_a2 = 0.0;
      if (t <= 0.0) {
        const double e = std::exp(2.0 * t);
        a_ = 1.0 / std::sqrt(1.0 + e);
        one_minus_a2 = e / (1.0 + e);
        g_ = t - 0.5 * std::log1p(e);
      } else {
        const double q = std::exp(-2.0 * t);
        a_ = std::sqrt(q / (1.0 + q));
        one_minus_a2 = 1.0 / (1.0 + q);
        g_ = -0.5 * std::log1p(q);
      }
      a2_minus_1_ = -one_minus_a2;
      a_minus_1_ = -one_minus_a2 / (1.0 + a_);
      adot_ = a_ * a2_minus_1_;
      break;
    }
  }
}

Complex FamilyEvaluator::a_plus_zeta(Complex theta) const {
  // a + e^{i theta} = (a - 1) + 2 cos(theta/2) e^{i theta/2}
  const Complex half = 0.5 * theta;
  return a_minus_1_ + 2.0 * std::cos(half) * std::exp(kI * half);
}

Complex FamilyEvaluator::a_zeta_plus_one(Complex theta) const {
  const Complex half = 0.5 * theta;
  return a_minus_1_ * std::exp(kI * theta) + 2.0 * std::cos(half) * std::exp(kI * half);
}

Complex FamilyEvaluator::log_a_plus_zeta(Complex theta) const {
  const Complex half = 0.5 * theta;
  switch (spec_.family) {
    case Family::paperclip:
      // Re(a + e^{i theta}) > 0 for a > 1: the principal branch is continuous.
      return std::log(a_plus_zeta(theta));
    case Family::hairclip: {
      // log(a + e^{i theta}) = i theta + log(1 + a e^{-i theta}), the second
      // term principal since a < 1; winds once per period.
      const Complex w = -a_minus_1_ + 2.0 * a_ * std::cos(half) * std::exp(-kI * half);
      return kI * theta + std::log(w);
    }
    case Family::grim_reaper:
      return std::log(2.0 * std::cos(half)) + kI * half;
    case Family::circle: break;
  }
  throw std::logic_error("log_a_plus_zeta: circle has no logarithmic form");
}

Complex FamilyEvaluator::z(Complex theta) const {
  Complex base;
  if (spec_.family == Family::circle)
    base = a_ * std::exp(kI * theta);
  else
    base = -log_a_plus_zeta(theta) + g_;
  return rot_ * base + spec_.translation;
}

Complex FamilyEvaluator::schwarz(Complex theta) const {
  // S(theta) = conj(z(theta)) for real theta; written so it is analytic in theta.
  Complex base;
  if (spec_.family == Family::circle)
    base = a_ * std::exp(-kI * theta);
  else
    base = -log_a_plus_zeta(-theta) + g_;
  return std::conj(rot_) * base + std::conj(spec_.translation);
}

Complex FamilyEvaluator::z_theta(Complex theta) const {
  const Complex zeta = std::exp(kI * theta);
  if (spec_.family == Family::circle) return rot_ * kI * a_ * zeta;
  return rot_ * (-kI * zeta / a_plus_zeta(theta));
}

RawJet FamilyEvaluator::jet(Complex theta) const {
  RawJet j;
  j.z = z(theta);
  j.z_theta = z_theta(theta);
  j.S = schwarz(theta);
  const Complex zeta = std::exp(kI * theta);
  const double adot = opts_.adot_scale * adot_;
  if (spec_.family == Family::circle) {
    j.S_z = -1.0 / (zeta * zeta);
    j.S_zz = 2.0 / (a_ * zeta * zeta * zeta);
    j.S_t = 2.0 * adot / zeta;
  } else {
    const Complex apz = a_plus_zeta(theta);
    const Complex azp1 = a_zeta_plus_one(theta);
    const Complex c = std::cos(0.5 * theta);
    // zeta^2 + 2 a zeta + 1 = 2 zeta (a + cos theta)
    const Complex quad = 2.0 * zeta * (a_minus_1_ + 2.0 * c * c);
    j.S_z = -apz / (zeta * azp1);
    j.S_zz = -apz * a_ * quad / (zeta * zeta * azp1 * azp1);
    if (spec_.family == Family::grim_reaper) {
      j.S_t = 2.0 * c * std::exp(0.5 * kI * theta) / zeta;  // (1 + zeta)/zeta
    } else {
      j.S_t = (adot / a2_minus_1_) * quad / (zeta * azp1);
    }
  }
  const Complex cr = std::conj(rot_);
  j.S_z *= cr * cr;
  j.S_zz *= cr * cr * cr;
  j.S_t *= cr;
  return j;
}

void FamilyEvaluator::check_parameter(double theta) const {
  if (!std::isfinite(theta)) throw SingularParameterError("non-finite theta");
  if (spec_.family == Family::circle) return;
  if (spec_.family == Family::grim_reaper && !(std::abs(theta) < kPi))
    throw SingularParameterError("grim reaper parameter must lie in (-pi, pi)");
  if (std::abs(a_plus_zeta(theta)) < 1e-12)
    throw SingularParameterError("singular parameter: |a + e^{i theta}| < 1e-12");
}

}  // namespace detail

double family_a(const FamilySpec& spec, double t) { return detail::FamilyEvaluator(spec, t).a(); }

double family_a_dot(const FamilySpec& spec, double t) {
  return detail::FamilyEvaluator(spec, t).a_dot();
}

double family_g(const FamilySpec& spec, double t) { return detail::FamilyEvaluator(spec, t).g(); }

Complex eval_point(const FamilySpec& spec, double t, double theta) {
  const detail::FamilyEvaluator ev(spec, t);
  ev.check_parameter(theta);
  return ev.z(theta);
}

Complex eval_tangent(const FamilySpec& spec, double t, double theta) {
  const detail::FamilyEvaluator ev(spec, t);
  ev.check_parameter(theta);
  return ev.z_theta(theta);
}

double implicit_residual(const FamilySpec& spec, double t, Complex z) {
  const double a = family_a(spec, t);
  const Complex z0 = (z - spec.translation) * std::polar(1.0, -spec.rotation);
  const double x = z0.real(), y = z0.imag();
  switch (spec.family) {
    case Family::paperclip: return std::cosh(x) - std::exp(-t) * std::cos(y);
    case Family::hairclip: return std::sinh(x) + std::exp(-t) * std::cos(y);
    case Family::circle: return x * x + y * y - a * a;
    case Family::grim_reaper: {
      const double c = std::cos(y);
      if (!(c > 0.0)) throw DomainError("grim reaper implicit form needs cos y > 0");
      return x - t + std::log(2.0 * c);
    }
  }
  return 0.0;
}

ThetaRange default_theta_range(const FamilySpec& spec, double band) {
  if (spec.family == Family::grim_reaper) return {-kPi + band, kPi - band};
  if (spec.family == Family::circle) return {0.0, 2.0 * kPi};
  return {-kPi, kPi};
}

bool closes(const FamilySpec& spec, double theta_lo, double theta_hi) {
  const bool closed_family = spec.family == Family::circle || spec.family == Family::paperclip;
  return closed_family && std::abs((theta_hi - theta_lo) - 2.0 * kPi) < 1e-12;
}

CurveSamples sample_family(const FamilySpec& spec, double t, std::size_t n, double theta_lo,
                           double theta_hi) {
  if (n < 4) throw std::invalid_argument("sample_family needs n >= 4");
  if (!(theta_hi > theta_lo)) throw std::invalid_argument("sample_family needs theta_hi > theta_lo");
  const detail::FamilyEvaluator ev(spec, t);
  const bool closed = closes(spec, theta_lo, theta_hi);
  const double denom = static_cast<double>(closed ? n : n - 1);
  std::vector<Complex> z(n);
  std::vector<double> th(n);
  for (std::size_t i = 0; i < n; ++i) {
    th[i] = i + 1 == n && !closed ? theta_hi
                                   : theta_lo + (theta_hi - theta_lo) * static_cast<double>(i) / denom;
    ev.check_parameter(th[i]);
    z[i] = ev.z(th[i]);
  }
  return make_samples(z, closed ? Topology::closed : Topology::open, th);
}

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

// Boost's error estimate has a floor of a few ulps of max|f|, independent of the
// interval width, so its relative stopping test never fires on narrow cells.
double speed_integral_abs(const detail::FamilyEvaluator& ev, double lo, double hi, double abs_tol,
                          int depth) {
  auto speed = [&](double th) { return std::abs(ev.z_theta(th)); };
  double err = 0.0, l1 = 0.0;
  const double r = GK::integrate(speed, lo, hi, 0, 0.0, &err, &l1);
  const double floor = 16.0 * std::numeric_limits<double>::epsilon() * l1 / (hi - lo);
  if (depth <= 0 || err <= std::max(abs_tol, floor)) return r;
  const double mid = 0.5 * (lo + hi);
  return speed_integral_abs(ev, lo, mid, abs_tol, depth - 1) +
         speed_integral_abs(ev, mid, hi, abs_tol, depth - 1);
}

double speed_integral(const detail::FamilyEvaluator& ev, double lo, double hi, double abs_tol = 1e-14) {
  if (hi == lo) return 0.0;
  return speed_integral_abs(ev, lo, hi, abs_tol, 16);
}

}  // namespace

double family_arclength(const FamilySpec& spec, double t, double theta_lo, double theta_hi) {
  const detail::FamilyEvaluator ev(spec, t);
  ev.check_parameter(theta_lo);
  ev.check_parameter(theta_hi);
  constexpr int kPieces = 64;
  double s = 0.0;
  for (int k = 0; k < kPieces; ++k) {
    const double a = theta_lo + (theta_hi - theta_lo) * k / kPieces;
    const double b = theta_lo + (theta_hi - theta_lo) * (k + 1) / kPieces;
    s += speed_integral(ev, a, b);
  }
  return s;
}

CurveSamples sample_family_arclength(const FamilySpec& spec, double t, std::size_t n,
                                     double theta_lo, double theta_hi) {
  if (n < 8) throw std::invalid_argument("sample_family_arclength needs n >= 8");
  if (!(theta_hi > theta_lo))
    throw std::invalid_argument("sample_family_arclength needs theta_hi > theta_lo");
  const detail::FamilyEvaluator ev(spec, t);
  ev.check_parameter(theta_lo);
  ev.check_parameter(theta_hi);
  const bool closed = closes(spec, theta_lo, theta_hi);

  // Cumulative arclength on a fine theta grid, then Newton inside one cell.
  const std::size_t cells = 8 * n;
  std::vector<double> grid(cells + 1), cum(cells + 1, 0.0);
  for (std::size_t k = 0; k <= cells; ++k)
    grid[k] = theta_lo + (theta_hi - theta_lo) * static_cast<double>(k) / static_cast<double>(cells);
  grid[cells] = theta_hi;
  const double cell_tol = 1e-15;
  for (std::size_t k = 0; k < cells; ++k)
    cum[k + 1] = cum[k] + speed_integral(ev, grid[k], grid[k + 1], cell_tol);
  const double total = cum[cells];

  const double denom = static_cast<double>(closed ? n : n - 1);
  std::vector<double> th(n);
  std::vector<Complex> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double target = total * static_cast<double>(i) / denom;
    double theta;
    if (i == 0) {
      theta = theta_lo;
    } else if (!closed && i + 1 == n) {
      theta = theta_hi;
    } else {
      const auto it = std::upper_bound(cum.begin(), cum.end(), target);
      const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(it - cum.begin()) - 1, cells - 1);
      const double base = cum[k];
      auto f = [&](double x) {
        return std::make_pair(base + speed_integral(ev, grid[k], x, cell_tol) - target, std::abs(ev.z_theta(x)));
      };
      const double guess = grid[k] + (grid[k + 1] - grid[k]) * (target - base) / (cum[k + 1] - base);
      std::uintmax_t iters = 60;
      theta = boost::math::tools::newton_raphson_iterate(f, guess, grid[k], grid[k + 1], 50, iters);
    }
    th[i] = theta;
    z[i] = ev.z(theta);
  }
  return make_samples(z, closed ? Topology::closed : Topology::open, th);
}

}  // namespace schwarzflow
