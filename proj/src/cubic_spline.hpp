#pragma once

// Cubic interpolation of complex-valued samples on a non-uniform knot set.
// Periodic splines close the curve smoothly; clamped splines take end
// derivatives from second-order one-sided differences.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace schwarzflow::detail {

class CubicSpline {
 public:
  using Complex = std::complex<double>;

  /// `knots` strictly increasing, one per value. For a periodic spline,
  /// `period` is the parameter of the implicit repeated first value and must
  /// exceed the last knot.
  static CubicSpline periodic(std::span<const double> knots, std::span<const Complex> values,
                              double period);
  static CubicSpline clamped(std::span<const double> knots, std::span<const Complex> values);

  /// Value at parameter `u`. Periodic splines wrap `u`; clamped splines extend
  /// the first/last cubic piece outside the knot range.
  [[nodiscard]] Complex operator()(double u) const;

  [[nodiscard]] double front() const { return u_.front(); }
  [[nodiscard]] double back() const { return u_.back(); }
  [[nodiscard]] bool is_periodic() const { return periodic_; }
  /// Knot parameters including the closing knot for periodic splines.
  [[nodiscard]] std::span<const double> knots() const { return u_; }

 private:
  CubicSpline() = default;
  [[nodiscard]] Complex eval_piece(std::size_t k, double u) const;

  bool periodic_ = false;
  double period_ = 0.0;
  std::vector<double> u_;    // knots (periodic: N+1 entries, last = period)
  std::vector<Complex> y_;   // values (periodic: y_[N] = y_[0])
  std::vector<Complex> m_;   // second derivatives at knots
};

}  // namespace schwarzflow::detail
