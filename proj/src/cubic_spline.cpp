#include "cubic_spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace schwarzflow::detail {
namespace {

using Complex = std::complex<double>;

// Thomas algorithm for sub/diag/super bands; `rhs` is overwritten by x.
void solve_tridiagonal(std::vector<double> sub, std::vector<double> diag, std::vector<double> sup,
                       std::vector<Complex>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
}

}  // namespace

CubicSpline CubicSpline::periodic(std::span<const double> knots, std::span<const Complex> values,
                                  double period) {
  const std::size_t n = knots.size();
  if (n < 3 || values.size() != n || !(period > knots.back()))
    throw std::invalid_argument("periodic spline needs >= 3 knots and period > last knot");
  CubicSpline s;
  s.periodic_ = true;
  s.period_ = period;
  s.u_.assign(knots.begin(), knots.end());
  s.u_.push_back(period);
  s.y_.assign(values.begin(), values.end());
  s.y_.push_back(values.front());

  // Cyclic system for M_0..M_{n-1}:
  //   h_{i-1} M_{i-1} + 2(h_{i-1}+h_i) M_i + h_i M_{i+1} = 6(d_i - d_{i-1}),
  // indices mod n; solved with Sherman-Morrison on the tridiagonal part.
  std::vector<double> h(n);
  std::vector<Complex> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    h[i] = s.u_[i + 1] - s.u_[i];
    d[i] = (s.y_[i + 1] - s.y_[i]) / h[i];
  }
  std::vector<double> sub(n), diag(n), sup(n);
  std::vector<Complex> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t im = (i + n - 1) % n;
    sub[i] = h[im];
    diag[i] = 2.0 * (h[im] + h[i]);
    sup[i] = h[i];
    rhs[i] = 6.0 * (d[i] - d[im]);
  }
  const double alpha = sup[n - 1];  // A[n-1][0]
  const double beta = sub[0];       // A[0][n-1]
  const double gamma = -diag[0];
  std::vector<double> diag_mod = diag;
  diag_mod[0] -= gamma;
  diag_mod[n - 1] -= alpha * beta / gamma;

  std::vector<Complex> x = rhs;
  solve_tridiagonal(sub, diag_mod, sup, x);
  std::vector<Complex> uvec(n, Complex{});
  uvec[0] = gamma;
  uvec[n - 1] = alpha;
  solve_tridiagonal(sub, diag_mod, sup, uvec);
  const Complex fact =
      (x[0] + beta * x[n - 1] / gamma) / (1.0 + uvec[0] + beta * uvec[n - 1] / gamma);
  s.m_.resize(n + 1);
  for (std::size_t i = 0; i < n; ++i) s.m_[i] = x[i] - fact * uvec[i];
  s.m_[n] = s.m_[0];
  return s;
}

CubicSpline CubicSpline::clamped(std::span<const double> knots, std::span<const Complex> values) {
  const std::size_t n = knots.size();
  if (n < 3 || values.size() != n)
    throw std::invalid_argument("clamped spline needs >= 3 knots");
  CubicSpline s;
  s.u_.assign(knots.begin(), knots.end());
  s.y_.assign(values.begin(), values.end());

  const auto& u = s.u_;
  const auto& y = s.y_;
  // End slopes from the quadratic through the first (last) three samples.
  auto three_point_slope = [](double u0, double u1, double u2, Complex y0, Complex y1,
                              Complex y2) {
    const double h1 = u1 - u0;
    const double h2 = u2 - u0;
    return (-(h1 + h2) / (h1 * h2)) * y0 + (h2 / (h1 * (h2 - h1))) * y1 -
           (h1 / (h2 * (h2 - h1))) * y2;
  };
  const Complex slope0 = three_point_slope(u[0], u[1], u[2], y[0], y[1], y[2]);
  const Complex slope1 =
      -three_point_slope(-u[n - 1], -u[n - 2], -u[n - 3], y[n - 1], y[n - 2], y[n - 3]);

  std::vector<double> h(n - 1);
  std::vector<Complex> d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = u[i + 1] - u[i];
    d[i] = (y[i + 1] - y[i]) / h[i];
  }
  std::vector<double> sub(n, 0.0), diag(n), sup(n, 0.0);
  std::vector<Complex> rhs(n);
  diag[0] = 2.0 * h[0];
  sup[0] = h[0];
  rhs[0] = 6.0 * (d[0] - slope0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    sub[i] = h[i - 1];
    diag[i] = 2.0 * (h[i - 1] + h[i]);
    sup[i] = h[i];
    rhs[i] = 6.0 * (d[i] - d[i - 1]);
  }
  sub[n - 1] = h[n - 2];
  diag[n - 1] = 2.0 * h[n - 2];
  rhs[n - 1] = 6.0 * (slope1 - d[n - 2]);
  solve_tridiagonal(sub, diag, sup, rhs);
  s.m_ = std::move(rhs);
  return s;
}

CubicSpline::Complex CubicSpline::eval_piece(std::size_t k, double u) const {
  const double h = u_[k + 1] - u_[k];
  const double a = (u_[k + 1] - u) / h;
  const double b = (u - u_[k]) / h;
  return a * y_[k] + b * y_[k + 1] +
         ((a * a * a - a) * m_[k] + (b * b * b - b) * m_[k + 1]) * (h * h / 6.0);
}

CubicSpline::Complex CubicSpline::operator()(double u) const {
  if (periodic_) {
    u = std::fmod(u - u_.front(), period_ - u_.front());
    if (u < 0) u += period_ - u_.front();
    u += u_.front();
  }
  const auto it = std::upper_bound(u_.begin(), u_.end(), u);
  std::size_t k = it == u_.begin() ? 0 : static_cast<std::size_t>(it - u_.begin()) - 1;
  k = std::min(k, u_.size() - 2);
  return eval_piece(k, u);
}

}  // namespace schwarzflow::detail
