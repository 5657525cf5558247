#include "schwarzflow/schwarz_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "family_eval.hpp"
#include "schwarzflow/errors.hpp"

namespace schwarzflow {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

detail::EvalOptions eval_options(const ResidualOptions& opts) {
  return {.adot_scale = opts.flip_adot ? -1.0 : 1.0};
}

std::vector<double> theta_grid(const FamilySpec& spec, std::size_t n, const ResidualOptions& opts) {
  const auto r = default_theta_range(spec, opts.singular_band);
  const bool closed = closes(spec, r.lo, r.hi);
  const double denom = static_cast<double>(closed ? n : n - 1);
  std::vector<double> th(n);
  for (std::size_t i = 0; i < n; ++i) th[i] = r.lo + (r.hi - r.lo) * static_cast<double>(i) / denom;
  if (!closed) th.back() = r.hi;
  return th;
}

CurveSamples arclength_samples(const FamilySpec& spec, double t, std::size_t n,
                               const ResidualOptions& opts) {
  const auto r = default_theta_range(spec, opts.singular_band);
  return sample_family_arclength(spec, t, n, r.lo, r.hi);
}

// Picks the square root aligned with the parameter direction `tangent`.
Complex oriented_sqrt(Complex s_z, Complex tangent) {
  Complex r = std::sqrt(s_z);
  if ((r * tangent).real() < 0.0) r = -r;
  return r;
}

// S_t at fixed z by centered differences in time. theta is moved by one Newton
// step (complex in general) so that z(theta', t +/- dt) stays on z0.
Complex fd_time_derivative(const FamilySpec& spec, double t, Complex theta, Complex z0,
                           double dt, const detail::EvalOptions& eo) {
  const auto window = valid_window(spec);
  auto schwarz_at = [&](double tt) {
    const detail::FamilyEvaluator ev(spec, tt, eo);
    const Complex th = theta - (ev.z(theta) - z0) / ev.z_theta(theta);
    return ev.schwarz(th);
  };
  Complex d;
  if (window.contains(t + dt) && window.contains(t - dt)) {
    d = (schwarz_at(t + dt) - schwarz_at(t - dt)) / (2.0 * dt);
  } else if (window.contains(t - 2.0 * dt)) {
    d = (3.0 * schwarz_at(t) - 4.0 * schwarz_at(t - dt) + schwarz_at(t - 2.0 * dt)) / (2.0 * dt);
  } else {
    d = (-3.0 * schwarz_at(t) + 4.0 * schwarz_at(t + dt) - schwarz_at(t + 2.0 * dt)) / (2.0 * dt);
  }
  return d;
}

}  // namespace

std::string_view to_string(EvalMode m) {
  return m == EvalMode::analytic ? "analytic" : "fd";
}

EvalMode parse_mode(std::string_view name) {
  if (name == "analytic") return EvalMode::analytic;
  if (name == "fd" || name == "finite_difference") return EvalMode::finite_difference;
  throw std::invalid_argument("unknown mode '" + std::string(name) + "' (expected analytic or fd)");
}

void ResidualReport::add(double theta, double r) {
  per_point.push_back({theta, r});
  max_abs = std::max(max_abs, r);
  n = per_point.size();
}

Complex schwarz_eval(const FamilySpec& spec, double t, double theta) {
  const detail::FamilyEvaluator ev(spec, t);
  ev.check_parameter(theta);
  return ev.schwarz(theta);
}

double fd_arclength_step(const FamilySpec& spec, double t, std::size_t n,
                         const ResidualOptions& opts) {
  const auto r = default_theta_range(spec, opts.singular_band);
  const double length = family_arclength(spec, t, r.lo, r.hi);
  return length / static_cast<double>(closes(spec, r.lo, r.hi) ? n : n - 1);
}

namespace {

SchwarzJet jet_at(const FamilySpec& spec, double t, double theta, EvalMode mode, double ds,
                  const ResidualOptions& opts) {
  const auto eo = eval_options(opts);
  const detail::FamilyEvaluator ev(spec, t, eo);
  ev.check_parameter(theta);

  SchwarzJet jet;
  jet.mode = mode;
  jet.at.theta = theta;
  if (mode == EvalMode::analytic) {
    const auto raw = ev.jet(theta);
    jet.S = raw.S;
    jet.S_z = raw.S_z;
    jet.S_zz = raw.S_zz;
    jet.S_t = raw.S_t;
    jet.at.z = raw.z;
    jet.sqrt_S_z = oriented_sqrt(raw.S_z, raw.z_theta);
    return jet;
  }

  // Local theta step giving an arclength step of ds.
  const double delta = ds / std::abs(ev.z_theta(theta));
  auto divided = [&](double c) {
    return (ev.schwarz(c + delta) - ev.schwarz(c - delta)) / (ev.z(c + delta) - ev.z(c - delta));
  };
  const Complex z0 = ev.z(theta);
  const Complex dz = ev.z(theta + delta) - ev.z(theta - delta);
  jet.at.z = z0;
  jet.S = ev.schwarz(theta);
  jet.S_z = divided(theta);
  jet.S_zz = (divided(theta + delta) - divided(theta - delta)) / dz;
  jet.S_t = fd_time_derivative(spec, t, theta, z0, opts.fd_dt, eo);
  jet.sqrt_S_z = oriented_sqrt(jet.S_z, dz);
  return jet;
}

}  // namespace

SchwarzJet schwarz_jet(const FamilySpec& spec, double t, double theta, EvalMode mode, double ds,
                       const ResidualOptions& opts) {
  if (mode == EvalMode::finite_difference) {
    const auto r = default_theta_range(spec, opts.singular_band);
    const double length = family_arclength(spec, t, r.lo, r.hi);
    if (ds <= 0.0) ds = length / 512.0;
    if (length / ds < 32.0 - 1e-9)
      throw ResolutionError("finite-difference jet needs a grid of at least 32 points");
  }
  return jet_at(spec, t, theta, mode, ds, opts);
}

ResidualReport pde_residual(const FamilySpec& spec, double t, std::size_t n, EvalMode mode,
                            const ResidualOptions& opts) {
  if (n < 32) throw ResolutionError("pde_residual needs n >= 32");
  ResidualReport rep;
  rep.identity = "pde";
  rep.mode = mode;
  if (mode == EvalMode::analytic) {
    const detail::FamilyEvaluator ev(spec, t, eval_options(opts));
    for (double th : theta_grid(spec, n, opts)) {
      ev.check_parameter(th);
      const auto j = ev.jet(th);
      rep.add(th, std::abs(j.S_t * j.S_z - j.S_zz));
    }
    return rep;
  }
  const auto samples = arclength_samples(spec, t, n, opts);
  const double ds = fd_arclength_step(spec, t, n, opts);
  rep.h = ds;
  for (const auto& p : samples.points) {
    const auto j = jet_at(spec, t, p.theta, mode, ds, opts);
    rep.add(p.theta, std::abs(j.S_t * j.S_z - j.S_zz));
  }
  return rep;
}

SchwarzScalar curvature_schwarz(const SchwarzJet& jet) {
  if (std::abs(jet.S_z) < 1e-12) throw SingularDerivativeError("|S_z| < 1e-12");
  const Complex k = 0.5 * kI * jet.S_zz / (jet.S_z * jet.sqrt_S_z);
  return {k.real(), k.imag()};
}

SchwarzScalar normal_velocity_schwarz(const SchwarzJet& jet) {
  if (std::abs(jet.S_z) < 1e-12) throw SingularDerivativeError("|S_z| < 1e-12");
  const Complex v = 0.5 * kI * jet.S_t / jet.sqrt_S_z;
  return {v.real(), v.imag()};
}

ResidualReport heat_residual(const FamilySpec& spec, double t, std::size_t n, EvalMode mode,
                             const ResidualOptions& opts) {
  if (n < 64) throw ResolutionError("heat_residual needs n >= 64");
  ResidualReport rep;
  rep.identity = "heat";
  rep.mode = mode;
  const detail::FamilyEvaluator ev(spec, t, eval_options(opts));
  if (mode == EvalMode::analytic) {
    for (double th : theta_grid(spec, n, opts)) {
      ev.check_parameter(th);
      const auto j = ev.jet(th);
      const Complex s_ss = j.S_zz / (2.0 * j.S_z);
      rep.add(th, std::abs(j.S_t - 2.0 * s_ss));
    }
    return rep;
  }
  // On the curve S = conj(z); difference it twice in arclength.
  const auto samples = arclength_samples(spec, t, n, opts);
  const auto& p = samples.points;
  const std::size_t m = p.size();
  const double ds = fd_arclength_step(spec, t, n, opts);
  rep.h = ds;
  std::vector<Complex> s(m);
  for (std::size_t i = 0; i < m; ++i) s[i] = ev.schwarz(p[i].theta);
  const bool closed = samples.closed();
  for (std::size_t i = 0; i < m; ++i) {
    if (!closed && (i == 0 || i + 1 == m)) continue;
    const Complex sm = s[(i + m - 1) % m], sp = s[(i + 1) % m];
    const Complex s_ss = (sp - 2.0 * s[i] + sm) / (ds * ds);
    rep.add(p[i].theta, std::abs(ev.jet(p[i].theta).S_t - 2.0 * s_ss));
  }
  return rep;
}

ResidualReport reaper_functional_residual(std::size_t n, double band) {
  if (n < 64) throw ResolutionError("reaper_functional_residual needs n >= 64");
  ResidualReport rep;
  rep.identity = "reaper";
  rep.mode = EvalMode::finite_difference;
  const double step = std::min(2.0 * kPi / static_cast<double>(n), 0.5 * band);
  rep.h = step;

  // Gauge alpha = theta/2.
  auto alpha = [](double th) { return 0.5 * th; };
  auto alpha_prime = [](double) { return 0.5; };
  auto h = [&](double th) { return -alpha_prime(th) * (1.0 + kI * std::tan(alpha(th))); };
  auto f = [&](double th) { return -std::log(1.0 + std::exp(2.0 * kI * alpha(th))); };
  auto log_ratio = [&](double th) { return std::log(h(-th) / h(th)); };

  double sym = 0, feqh = 0, re_parts = 0, polar = 0, integral = 0, deriv = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double th = -kPi + 2.0 * kPi * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    if (std::abs(th) > kPi - band) continue;
    const Complex hp = h(th), hm = h(-th);
    // (a) conjugate symmetry from the real-coefficient f
    const double r_sym = std::abs(hm - std::conj(hp));
    // (b) d/dtheta log[h(-theta)/h(theta)] = i [h(theta) + h(-theta)]
    const Complex lhs = (log_ratio(th + step) - log_ratio(th - step)) / (2.0 * step);
    const Complex rhs = kI * (hp + hm);
    const double r_feqh = std::abs(lhs - rhs);
    // real part: both sides vanish on their own
    const double r_re = std::max(std::abs(lhs.real()), std::abs(rhs.real()));
    // h = r e^{i alpha} with r = -alpha'/cos(alpha), which makes
    // alpha' = -r cos(alpha) hold
    const double r_amp = -alpha_prime(th) / std::cos(alpha(th));
    const double r_pol = std::abs(hp - r_amp * std::exp(kI * alpha(th))) +
                         std::abs(alpha_prime(th) + r_amp * std::cos(alpha(th)));
    // (c) f = -log(1 + e^{2 i alpha}) integrates df/dtheta = i h
    const Complex df = -kI * std::exp(kI * th) / (1.0 + std::exp(kI * th));
    const double r_deriv = std::abs(df - kI * hp);
    auto ih_re = [&](double x) { return (kI * h(x)).real(); };
    auto ih_im = [&](double x) { return (kI * h(x)).imag(); };
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    const Complex quad{GK::integrate(ih_re, 0.0, th, 15, 1e-15), GK::integrate(ih_im, 0.0, th, 15, 1e-15)};
    const double r_int = std::abs(quad - (f(th) - f(0.0)));

    sym = std::max(sym, r_sym);
    feqh = std::max(feqh, r_feqh);
    re_parts = std::max(re_parts, r_re);
    polar = std::max(polar, r_pol);
    deriv = std::max(deriv, r_deriv);
    integral = std::max(integral, r_int);
    rep.add(th, std::max({r_sym, r_feqh, r_re, r_pol, r_deriv, r_int}));
  }
  rep.components = {{"conjugate_symmetry", sym},   {"functional_equation", feqh},
                    {"real_part_vanishes", re_parts}, {"polar_form", polar},
                    {"derivative_df_eq_ih", deriv}, {"integral_f", integral}};
  return rep;
}

double ode_residual(const FamilySpec& spec, double t) {
  const double a = family_a(spec, t);
  const double adot = family_a_dot(spec, t);
  switch (spec.family) {
    case Family::paperclip:
    case Family::hairclip: return std::abs(adot - a * (a * a - 1.0));
    case Family::circle: return std::abs(a * adot + 1.0);
    case Family::grim_reaper: return std::abs(adot);
  }
  return 0.0;
}

double ode_fd_residual(const FamilySpec& spec, double t, double dt) {
  const double fd = (family_a(spec, t + dt) - family_a(spec, t - dt)) / (2.0 * dt);
  return std::abs(fd - family_a_dot(spec, t));
}

ResidualReport on_curve_residual(const FamilySpec& spec, double t, std::size_t n,
                                 const ResidualOptions& opts) {
  ResidualReport rep;
  rep.identity = "on_curve";
  const detail::FamilyEvaluator ev(spec, t);
  for (double th : theta_grid(spec, n, opts)) {
    ev.check_parameter(th);
    rep.add(th, std::abs(ev.schwarz(th) - std::conj(ev.z(th))));
  }
  return rep;
}

ResidualReport curvature_vs_geometric(const FamilySpec& spec, double t, std::size_t n,
                                      const ResidualOptions& opts) {
  ResidualReport rep;
  rep.identity = "curvature_vs_geometric";
  rep.mode = EvalMode::finite_difference;
  const auto samples = arclength_samples(spec, t, n, opts);
  rep.h = samples.total_length / static_cast<double>(samples.closed() ? n : n - 1);
  const auto discrete = discrete_curvature(samples);
  const std::size_t skip = samples.closed() ? 0 : std::max<std::size_t>(1, n / 20);
  const detail::FamilyEvaluator ev(spec, t);
  for (std::size_t i = skip; i + skip < n; ++i) {
    const double th = samples.points[i].theta;
    const auto raw = ev.jet(th);
    SchwarzJet jet;
    jet.S_z = raw.S_z;
    jet.S_zz = raw.S_zz;
    jet.sqrt_S_z = oriented_sqrt(raw.S_z, raw.z_theta);
    rep.add(th, std::abs(curvature_schwarz(jet).value - discrete[i].kappa));
  }
  return rep;
}

ResidualReport curvature_velocity_residual(const FamilySpec& spec, double t, std::size_t n,
                                           const ResidualOptions& opts) {
  ResidualReport rep;
  rep.identity = "curvature_equals_velocity";
  for (double th : theta_grid(spec, n, opts)) {
    const auto jet = jet_at(spec, t, th, EvalMode::analytic, 0.0, opts);
    rep.add(th, std::abs(curvature_schwarz(jet).value - normal_velocity_schwarz(jet).value));
  }
  return rep;
}

}  // namespace schwarzflow
