#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace schwarzflow {

using Complex = std::complex<double>;

enum class Topology { closed, open };

/// One sample of a planar curve. `theta` is the generating parameter (or the
/// interpolated parameter after resampling), `s` the cumulative arclength
/// measured from the first sample.
struct CurvePoint {
  double theta = 0.0;
  Complex z{};
  double s = 0.0;
};

/// Ordered samples of a curve. Closed curves never repeat the seam point; the
/// seam chord (last -> first) is counted in `total_length`.
struct CurveSamples {
  std::vector<CurvePoint> points;
  Topology topology = Topology::open;
  /// +1 for counterclockwise closed curves, -1 for clockwise. Open curves
  /// carry +1 (traversal in sample order).
  int orientation = 1;
  double total_length = 0.0;

  [[nodiscard]] std::size_t size() const { return points.size(); }
  [[nodiscard]] bool closed() const { return topology == Topology::closed; }
  [[nodiscard]] std::vector<Complex> positions() const;
};

/// Builds samples from bare positions, filling arclength and orientation.
/// `thetas` may be empty, in which case the sample index is stored.
CurveSamples make_samples(std::span<const Complex> z, Topology topology,
                          std::span<const double> thetas = {});

/// Fills `s` by summing chord lengths. Throws DegenerateCurveError when two
/// consecutive points (including the seam pair of a closed curve) coincide.
CurveSamples cumulative_arclength(CurveSamples samples);

struct CurvatureSample {
  double kappa = 0.0;
  /// Left normal i*T of the sample-order tangent T. For a counterclockwise
  /// convex curve this is the inward normal and kappa > 0; kappa*normal is the
  /// curvature vector regardless of orientation.
  Complex normal{};
};

/// Signed curvature from second-order differences of position. Closed curves
/// use periodic centered stencils, open curves one-sided stencils at the ends.
/// Throws InsufficientStencilError for fewer than 5 points.
std::vector<CurvatureSample> discrete_curvature(const CurveSamples& samples);

struct AreaResult {
  double signed_area = 0.0;  // > 0 for counterclockwise
  double area = 0.0;         // |signed_area|
};

/// Shoelace area. Throws TopologyError for open curves.
AreaResult enclosed_area(const CurveSamples& samples);

/// Re-places `n` markers along a cubic interpolant of the samples (periodic for
/// closed curves, clamped for open ones) so that consecutive chords are equal.
/// Open-curve endpoints are kept exactly.
CurveSamples resample_uniform_arclength(const CurveSamples& samples, std::size_t n);

// Small helpers shared by the flow engine, the oracle comparisons and the CLI.

double min_spacing(const CurveSamples& samples);
double max_spacing(const CurveSamples& samples);

/// Distance from `p` to the polyline through `poly` (closing segment included
/// when `closed`).
double point_to_polyline_distance(Complex p, std::span<const Complex> poly, bool closed);

/// Symmetric sup distance between two sampled curves: the larger of the two
/// one-sided maxima of point-to-polyline distances.
double sup_distance(const CurveSamples& a, const CurveSamples& b);

/// Even-odd point-in-polygon test.
bool point_in_polygon(Complex p, std::span<const Complex> poly);

/// L^2 / (4 pi A) for a closed curve.
double isoperimetric_ratio(const CurveSamples& samples);

/// Affine images z -> factor * z + shift.
CurveSamples transformed(const CurveSamples& samples, Complex factor, Complex shift = {});

CurveSamples make_circle(std::size_t n, double radius, Complex center = {});
CurveSamples make_ellipse(std::size_t n, double semi_x, double semi_y);
/// Straight segment from `a` to `b` with `n` equispaced points (open).
CurveSamples make_segment(std::size_t n, Complex a, Complex b);

}  // namespace schwarzflow
