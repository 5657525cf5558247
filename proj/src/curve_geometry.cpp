#include "schwarzflow/curve_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include <boost/math/tools/toms748_solve.hpp>

#include "cubic_spline.hpp"
#include "schwarzflow/errors.hpp"

namespace schwarzflow {
namespace {

constexpr double kPi = std::numbers::pi;

double signed_shoelace(std::span<const Complex> z) {
  // Relative to the first point to limit cancellation for offset curves.
  const Complex o = z.front();
  double twice = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const Complex a = z[i] - o;
    const Complex b = z[(i + 1) % z.size()] - o;
    twice += a.real() * b.imag() - a.imag() * b.real();
  }
  return 0.5 * twice;
}

// Root of a monotone function on [lo, hi] to near machine precision.
template <class F>
double bracketed_root(F&& f, double lo, double hi, double flo, double fhi) {
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  std::uintmax_t iters = 200;
  auto tol = boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 3);
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
  return 0.5 * (r.first + r.second);
}

// Walks chords of length `c` along a spline. Knot j beyond the last knot is
// virtual: periodic splines wrap, clamped splines extrapolate the end piece at
// the last knot spacing.
class ChordWalker {
 public:
  explicit ChordWalker(const detail::CubicSpline& spline) : spline_(spline) {
    const auto k = spline.knots();
    knots_.assign(k.begin(), k.end());
    span_ = knots_.back() - knots_.front();
    last_step_ = knots_[knots_.size() - 1] - knots_[knots_.size() - 2];
  }

  double knot(std::size_t j) const {
    const std::size_t m = knots_.size() - 1;  // number of pieces
    if (j <= m) return knots_[j];
    if (spline_.is_periodic()) {
      const std::size_t wraps = j / m;
      return knots_[j % m] + static_cast<double>(wraps) * span_;
    }
    return knots_.back() + static_cast<double>(j - m) * last_step_;
  }

  // Returns the parameter one chord `c` after `u`; `j` is a knot index with
  // knot(j) > u and is advanced in place.
  double step(double u, double c, std::size_t& j) const {
    const Complex p = spline_(u);
    auto g = [&](double v) { return std::abs(spline_(v) - p) - c; };
    double lo = u;
    double glo = -c;
    for (std::size_t guard = 0; guard < 1u << 20; ++guard) {
      const double hi = knot(j);
      const double ghi = g(hi);
      if (ghi >= 0.0) return bracketed_root(g, lo, hi, glo, ghi);
      lo = hi;
      glo = ghi;
      ++j;
    }
    throw DegenerateCurveError("resample: chord walk did not terminate");
  }

 private:
  const detail::CubicSpline& spline_;
  std::vector<double> knots_;
  double span_ = 0.0;
  double last_step_ = 0.0;
};

}  // namespace

std::vector<Complex> CurveSamples::positions() const {
  std::vector<Complex> z;
  z.reserve(points.size());
  for (const auto& p : points) z.push_back(p.z);
  return z;
}

CurveSamples make_samples(std::span<const Complex> z, Topology topology,
                          std::span<const double> thetas) {
  CurveSamples out;
  out.topology = topology;
  out.points.resize(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    out.points[i].z = z[i];
    out.points[i].theta = thetas.empty() ? static_cast<double>(i) : thetas[i];
  }
  return cumulative_arclength(std::move(out));
}

CurveSamples cumulative_arclength(CurveSamples samples) {
  auto& pts = samples.points;
  const std::size_t need = samples.closed() ? 3 : 2;
  if (pts.size() < need) throw DegenerateCurveError("curve needs at least 3 (closed) / 2 (open) points");
  pts[0].s = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double chord = std::abs(pts[i].z - pts[i - 1].z);
    if (!(chord > 0.0))
      throw DegenerateCurveError("coincident consecutive points at index " + std::to_string(i));
    pts[i].s = pts[i - 1].s + chord;
  }
  samples.total_length = pts.back().s;
  samples.orientation = 1;
  if (samples.closed()) {
    const double seam = std::abs(pts.front().z - pts.back().z);
    if (!(seam > 0.0)) throw DegenerateCurveError("closed curve repeats its seam point");
    samples.total_length += seam;
    const auto z = samples.positions();
    samples.orientation = signed_shoelace(z) >= 0.0 ? 1 : -1;
  }
  return samples;
}

std::vector<CurvatureSample> discrete_curvature(const CurveSamples& samples) {
  const auto& p = samples.points;
  const std::size_t n = p.size();
  if (n < 5) throw InsufficientStencilError("discrete curvature needs at least 5 points");

  std::vector<CurvatureSample> out(n);
  auto finish = [&](std::size_t i, Complex d1, Complex d2) {
    const double speed = std::abs(d1);
    out[i].kappa = (std::conj(d1) * d2).imag() / (speed * speed * speed);
    out[i].normal = Complex{0.0, 1.0} * d1 / speed;
  };

  // Index-parametrized derivatives; the curvature formula is invariant under
  // reparametrization, so near-uniform spacing keeps the stencils second order.
  if (samples.closed()) {
    for (std::size_t i = 0; i < n; ++i) {
      const Complex zm = p[(i + n - 1) % n].z, z0 = p[i].z, zp = p[(i + 1) % n].z;
      finish(i, 0.5 * (zp - zm), zp - 2.0 * z0 + zm);
    }
    return out;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Complex zm = p[i - 1].z, z0 = p[i].z, zp = p[i + 1].z;
    finish(i, 0.5 * (zp - zm), zp - 2.0 * z0 + zm);
  }
  finish(0, 0.5 * (-3.0 * p[0].z + 4.0 * p[1].z - p[2].z),
         2.0 * p[0].z - 5.0 * p[1].z + 4.0 * p[2].z - p[3].z);
  const std::size_t m = n - 1;
  finish(m, 0.5 * (3.0 * p[m].z - 4.0 * p[m - 1].z + p[m - 2].z),
         2.0 * p[m].z - 5.0 * p[m - 1].z + 4.0 * p[m - 2].z - p[m - 3].z);
  return out;
}

AreaResult enclosed_area(const CurveSamples& samples) {
  if (!samples.closed()) throw TopologyError("enclosed_area requires a closed curve");
  const auto z = samples.positions();
  const double a = signed_shoelace(z);
  return {a, std::abs(a)};
}

CurveSamples resample_uniform_arclength(const CurveSamples& samples, std::size_t n) {
  if (n < 8) throw DegenerateCurveError("resample needs n >= 8");
  const auto& p = samples.points;
  const std::size_t m = p.size();
  if (m < 4) throw DegenerateCurveError("resample needs at least 4 input points");

  // Chord-length knots; theta rides along as a second interpolated channel.
  std::vector<double> u(m);
  std::vector<Complex> z(m), th(m);
  for (std::size_t i = 0; i < m; ++i) {
    u[i] = p[i].s;
    z[i] = p[i].z;
    th[i] = Complex{p[i].theta, 0.0};
  }
  const bool closed = samples.closed();
  const double total = samples.total_length;
  const auto spline = closed ? detail::CubicSpline::periodic(u, z, total)
                             : detail::CubicSpline::clamped(u, z);
  const ChordWalker walker(spline);

  // Closed: n equal chords return to the start. Open: n-1 equal chords end at
  // the last knot. The landing parameter is monotone in the chord length.
  const std::size_t chords = closed ? n : n - 1;
  const double end_u = closed ? total : u.back();
  auto landing = [&](double c) {
    double v = 0.0;
    std::size_t j = 1;
    for (std::size_t k = 0; k < chords; ++k) v = walker.step(v, c, j);
    return v - end_u;
  };
  // landing(c) is close to linear in c, so secant usually lands in a few walks;
  // bracketing is the fallback.
  const double guess = total / static_cast<double>(chords);
  double c = guess;
  bool converged = false;
  {
    double c0 = guess, f0 = landing(c0);
    double c1 = guess * (1.0 - 1e-3), f1 = landing(c1);
    for (int it = 0; it < 40 && f1 != f0; ++it) {
      const double c2 = c1 - f1 * (c1 - c0) / (f1 - f0);
      if (!(c2 > 0.0) || !std::isfinite(c2)) break;
      c0 = c1;
      f0 = f1;
      c1 = c2;
      f1 = landing(c1);
      if (std::abs(f1) <= 1e-14 * end_u || std::abs(c1 - c0) <= 1e-15 * c1) {
        converged = std::abs(f1) <= 1e-12 * end_u;
        break;
      }
    }
    c = c1;
  }
  if (!converged) {
    double lo = 0.95 * guess, hi = 1.0 * guess;
    double flo = landing(lo), fhi = landing(hi);
    for (int expand = 0; flo > 0.0 && expand < 60; ++expand) {
      hi = lo;
      fhi = flo;
      lo *= 0.9;
      flo = landing(lo);
    }
    for (int expand = 0; fhi < 0.0 && expand < 60; ++expand) {
      lo = hi;
      flo = fhi;
      hi *= 1.05;
      fhi = landing(hi);
    }
    if (flo > 0.0 || fhi < 0.0) throw DegenerateCurveError("resample: could not bracket chord length");
    c = bracketed_root(landing, lo, hi, flo, fhi);
  }

  std::vector<double> params(n);
  params[0] = 0.0;
  std::size_t j = 1;
  for (std::size_t k = 1; k < n; ++k) params[k] = walker.step(params[k - 1], c, j);

  // theta is a label only: interpolate it linearly in the chord parameter. The
  // seam piece of a closed curve continues at the last theta step.
  std::vector<double> tu = u, tv(m);
  for (std::size_t i = 0; i < m; ++i) tv[i] = p[i].theta;
  if (closed) {
    tu.push_back(total);
    tv.push_back(tv[m - 1] + (tv[m - 1] - tv[m - 2]));
  }
  auto theta_at = [&](double v) {
    const auto it = std::upper_bound(tu.begin(), tu.end(), v);
    std::size_t k = it == tu.begin() ? 0 : static_cast<std::size_t>(it - tu.begin()) - 1;
    k = std::min(k, tu.size() - 2);
    const double w = (v - tu[k]) / (tu[k + 1] - tu[k]);
    return tv[k] + w * (tv[k + 1] - tv[k]);
  };

  CurveSamples out;
  out.topology = samples.topology;
  out.points.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.points[k].z = spline(params[k]);
    out.points[k].theta = theta_at(params[k]);
  }
  out.points[0] = {p.front().theta, p.front().z, 0.0};
  if (!closed) out.points[n - 1] = {p.back().theta, p.back().z, 0.0};
  return cumulative_arclength(std::move(out));
}

double min_spacing(const CurveSamples& samples) {
  const auto& p = samples.points;
  double h = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < p.size(); ++i) h = std::min(h, std::abs(p[i].z - p[i - 1].z));
  if (samples.closed()) h = std::min(h, std::abs(p.front().z - p.back().z));
  return h;
}

double max_spacing(const CurveSamples& samples) {
  const auto& p = samples.points;
  double h = 0.0;
  for (std::size_t i = 1; i < p.size(); ++i) h = std::max(h, std::abs(p[i].z - p[i - 1].z));
  if (samples.closed()) h = std::max(h, std::abs(p.front().z - p.back().z));
  return h;
}

double point_to_polyline_distance(Complex q, std::span<const Complex> poly, bool closed) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t segs = closed ? poly.size() : poly.size() - 1;
  for (std::size_t i = 0; i < segs; ++i) {
    const Complex a = poly[i];
    const Complex b = poly[(i + 1) % poly.size()];
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    double t = len2 > 0.0 ? ((q - a) * std::conj(ab)).real() / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, std::abs(q - (a + t * ab)));
  }
  return best;
}

double sup_distance(const CurveSamples& a, const CurveSamples& b) {
  const auto za = a.positions();
  const auto zb = b.positions();
  double d = 0.0;
  for (const auto& q : za) d = std::max(d, point_to_polyline_distance(q, zb, b.closed()));
  for (const auto& q : zb) d = std::max(d, point_to_polyline_distance(q, za, a.closed()));
  return d;
}

bool point_in_polygon(Complex q, std::span<const Complex> poly) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Complex a = poly[i], b = poly[j];
    if ((a.imag() > q.imag()) != (b.imag() > q.imag())) {
      const double x = a.real() + (q.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
      if (q.real() < x) inside = !inside;
    }
  }
  return inside;
}

double isoperimetric_ratio(const CurveSamples& samples) {
  const double area = enclosed_area(samples).area;
  return samples.total_length * samples.total_length / (4.0 * kPi * area);
}

CurveSamples transformed(const CurveSamples& samples, Complex factor, Complex shift) {
  CurveSamples out = samples;
  for (auto& p : out.points) p.z = factor * p.z + shift;
  return cumulative_arclength(std::move(out));
}

CurveSamples make_circle(std::size_t n, double radius, Complex center) {
  std::vector<Complex> z(n);
  std::vector<double> th(n);
  for (std::size_t i = 0; i < n; ++i) {
    th[i] = -kPi + 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    z[i] = center + std::polar(radius, th[i]);
  }
  return make_samples(z, Topology::closed, th);
}

CurveSamples make_ellipse(std::size_t n, double semi_x, double semi_y) {
  std::vector<Complex> z(n);
  std::vector<double> th(n);
  for (std::size_t i = 0; i < n; ++i) {
    th[i] = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    z[i] = {semi_x * std::cos(th[i]), semi_y * std::sin(th[i])};
  }
  return make_samples(z, Topology::closed, th);
}

CurveSamples make_segment(std::size_t n, Complex a, Complex b) {
  std::vector<Complex> z(n);
  std::vector<double> th(n);
  for (std::size_t i = 0; i < n; ++i) {
    th[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    z[i] = a + th[i] * (b - a);
  }
  return make_samples(z, Topology::open, th);
}

}  // namespace schwarzflow
