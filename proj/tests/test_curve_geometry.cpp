#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "schwarzflow/curve_geometry.hpp"
#include "schwarzflow/errors.hpp"
#include "schwarzflow/exact_solutions.hpp"

using namespace schwarzflow;
constexpr double kPi = std::numbers::pi;

namespace {

CurveSamples reversed(const CurveSamples& c) {
  std::vector<Complex> z = c.positions();
  std::reverse(z.begin(), z.end());
  return make_samples(z, c.topology);
}

double circle_area_error(std::size_t n) { return std::abs(enclosed_area(make_circle(n, 1.0)).area - kPi); }

}  // namespace

TEST_CASE("chordal length of sampled circles") {
  CHECK(make_circle(4, 1.0).total_length == doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::abs(make_circle(512, 1.0).total_length - 2.0 * kPi) < 1e-4);
}

TEST_CASE("arclength is cumulative and starts at zero") {
  const auto c = make_ellipse(100, 2.0, 1.0);
  CHECK(c.points.front().s == 0.0);
  for (std::size_t i = 1; i < c.size(); ++i) CHECK(c.points[i].s > c.points[i - 1].s);
  CHECK(c.total_length > c.points.back().s);
  CHECK(c.orientation == 1);
  CHECK(reversed(c).orientation == -1);
}

TEST_CASE("coincident points are rejected") {
  const std::vector<Complex> z = {{0, 0}, {1, 0}, {1, 0}, {0, 1}};
  CHECK_THROWS_AS(make_samples(z, Topology::open), DegenerateCurveError);
  const std::vector<Complex> seam = {{0, 0}, {1, 0}, {0, 1}, {0, 0}};
  CHECK_THROWS_AS(make_samples(seam, Topology::closed), DegenerateCurveError);
}

TEST_CASE("curvature of a circle of radius 2") {
  const auto c = make_circle(256, 2.0);
  const auto k = discrete_curvature(c);
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(std::abs(k[i].kappa - 0.5) < 1e-3);
    CHECK(std::abs(k[i].normal + c.points[i].z / 2.0) < 1e-12);
  }
}

TEST_CASE("curvature sign follows the curvature vector, not the traversal") {
  const auto c = make_circle(128, 1.0);
  const auto fwd = discrete_curvature(c);
  const auto back = discrete_curvature(reversed(c));
  CHECK(back.back().kappa < 0.0);
  CHECK(std::abs(fwd.front().kappa * fwd.front().normal - back.back().kappa * back.back().normal) < 1e-12);
}

TEST_CASE("straight segment has zero curvature") {
  const auto k = discrete_curvature(make_segment(50, {-1.0, 2.0}, {3.0, -1.0}));
  for (std::size_t i = 1; i + 1 < k.size(); ++i) CHECK(std::abs(k[i].kappa) < 1e-12);
}

TEST_CASE("curvature at the grim reaper tip") {
  // Theta-equispaced near the tip is almost arclength-uniform; theta = 0 is sample 100.
  const auto s = sample_family({Family::grim_reaper}, 0.0, 201, -1.0, 1.0);
  REQUIRE(std::abs(s.points[100].theta) < 1e-14);
  CHECK(std::abs(discrete_curvature(s)[100].kappa - 1.0) < 1e-3);
}

TEST_CASE("curvature needs five points") {
  CHECK_THROWS_AS(discrete_curvature(make_circle(4, 1.0)), InsufficientStencilError);
  CHECK_NOTHROW(discrete_curvature(make_circle(5, 1.0)));
}

TEST_CASE("curvature error of a circle is second order") {
  const double e1 = std::abs(discrete_curvature(make_circle(64, 1.0))[0].kappa - 1.0);
  const double e2 = std::abs(discrete_curvature(make_circle(128, 1.0))[0].kappa - 1.0);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("shoelace area") {
  CHECK(std::abs(enclosed_area(make_circle(1024, 1.0)).area - kPi) < 1e-4);
  const std::vector<Complex> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(enclosed_area(make_samples(square, Topology::closed)).area == 1.0);
  CHECK(enclosed_area(make_samples(square, Topology::closed)).signed_area == 1.0);
  const auto pc = sample_family({Family::paperclip}, -1.0, 2048, -kPi, kPi);
  CHECK(std::abs(enclosed_area(pc).area - 2.0 * kPi) < 1e-3);
  CHECK_THROWS_AS(enclosed_area(make_segment(10, 0.0, 1.0)), TopologyError);
}

TEST_CASE("shoelace area converges at second order") {
  for (std::size_t n : {64u, 128u, 256u}) CHECK(circle_area_error(n) / circle_area_error(2 * n) == doctest::Approx(4.0).epsilon(0.125));
}

TEST_CASE("reversing the samples flips the signed area") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.5, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto e = make_ellipse(40 + trial, u(rng), u(rng));
    const auto a = enclosed_area(e), b = enclosed_area(reversed(e));
    CHECK(a.signed_area > 0.0);
    CHECK(b.signed_area == doctest::Approx(-a.signed_area).epsilon(1e-14));
    CHECK(std::abs(a.area - b.area) < 1e-12);
  }
}

TEST_CASE("resampling a clustered circle spaces markers evenly") {
  std::vector<Complex> z;
  for (int i = 0; i < 300; ++i) {
    const double u = static_cast<double>(i) / 300.0;
    const double th = 2.0 * kPi * (u + 0.12 * std::sin(2.0 * kPi * u));
    z.push_back(std::polar(1.0, th));
  }
  const auto r = resample_uniform_arclength(make_samples(z, Topology::closed), 256);
  CHECK(r.size() == 256);
  CHECK((max_spacing(r) - min_spacing(r)) / min_spacing(r) < 1e-6);
  for (const auto& p : r.points) CHECK(std::abs(std::abs(p.z) - 1.0) < 1e-6);
}

TEST_CASE("resampling uniform input is a fixed point") {
  const auto c = make_circle(200, 1.3);
  const auto r = resample_uniform_arclength(c, 200);
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(std::abs(r.points[i].z - c.points[i].z) < 1e-10);

  const auto once = resample_uniform_arclength(make_ellipse(300, 2.0, 0.7), 300);
  const auto twice = resample_uniform_arclength(once, 300);
  for (std::size_t i = 0; i < once.size(); ++i) CHECK(std::abs(once.points[i].z - twice.points[i].z) < 1e-10);

  const auto seg = make_segment(64, {0.0, 0.0}, {2.0, 1.0});
  const auto rs = resample_uniform_arclength(seg, 64);
  for (std::size_t i = 0; i < seg.size(); ++i) CHECK(std::abs(rs.points[i].z - seg.points[i].z) < 1e-12);
}

TEST_CASE("resampled paperclip stays on the exact curve") {
  // Theta-equispaced samples leave 0.16-wide gaps at the fast tip for n = 512;
  // the 1e-6 bound is met from n = 1024.
  const FamilySpec pc{Family::paperclip};
  const std::size_t n = 1024;
  const auto r = resample_uniform_arclength(sample_family(pc, -1.0, n, -kPi, kPi), n);
  const auto dense = sample_family_arclength(pc, -1.0, 16 * n, -kPi, kPi).positions();
  double worst = 0.0;
  for (const auto& p : r.points) worst = std::max(worst, point_to_polyline_distance(p.z, dense, true));
  CHECK(worst < 1e-6);
}

TEST_CASE("resampling preserves length, orientation and open endpoints") {
  for (std::size_t n : {64u, 128u, 256u}) {
    const auto e = make_ellipse(n, 2.0, 1.0);
    const auto r = resample_uniform_arclength(e, n);
    CHECK(std::abs(r.total_length / e.total_length - 1.0) < 10.0 / double(n * n));
    CHECK(r.orientation == e.orientation);
  }
  const auto rv = resample_uniform_arclength(reversed(make_ellipse(100, 2.0, 1.0)), 80);
  CHECK(rv.orientation == -1);

  const auto arc = sample_family({Family::grim_reaper}, 0.0, 90, -2.5, 2.5);
  const auto ra = resample_uniform_arclength(arc, 70);
  CHECK(ra.points.front().z == arc.points.front().z);
  CHECK(ra.points.back().z == arc.points.back().z);
  CHECK((max_spacing(ra) - min_spacing(ra)) / min_spacing(ra) < 1e-8);
}

TEST_CASE("resample rejects tiny targets") {
  CHECK_THROWS_AS(resample_uniform_arclength(make_circle(32, 1.0), 7), DegenerateCurveError);
}

TEST_CASE("distances and containment helpers") {
  const std::vector<Complex> sq = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(point_to_polyline_distance({0.5, -2.0}, sq, true) == doctest::Approx(2.0));
  CHECK(point_to_polyline_distance({-1.0, 0.5}, sq, true) == doctest::Approx(1.0));
  CHECK(point_to_polyline_distance({-1.0, 0.5}, sq, false) == doctest::Approx(std::sqrt(1.25)));
  CHECK(point_in_polygon({0.5, 0.5}, sq));
  CHECK_FALSE(point_in_polygon({1.5, 0.5}, sq));
  CHECK(sup_distance(make_circle(64, 1.0), make_circle(64, 1.0)) == 0.0);
  CHECK(isoperimetric_ratio(make_circle(512, 1.0)) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(isoperimetric_ratio(make_ellipse(4096, 2.0, 1.0)) == doctest::Approx(1.1889).epsilon(1e-4));
}
