#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "schwarzflow/flow_engine.hpp"

using namespace schwarzflow;
constexpr double kPi = std::numbers::pi;

namespace {

FlowConfig quick(double t_end, std::size_t n = 128) {
  FlowConfig c;
  c.n = n;
  c.t_end = t_end;
  return c;
}

FlowState initial_state(const CurveSamples& c, double t = 0.0) {
  return {c, t, 0, compute_diagnostics(c)};
}

}  // namespace

TEST_CASE("config validation") {
  FlowConfig c = quick(1.0);
  CHECK_NOTHROW(c.validate());
  c.cfl = 0.6;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.cfl = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = quick(1.0, 16);
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = quick(1.0);
  c.stop_area = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = quick(-1.0);
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = quick(1.0);
  c.resample_every = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("a single step moves circle markers inward by dt/r") {
  const auto c = make_circle(128, 1.0);
  const auto s = step(initial_state(c), quick(1.0));
  const double dt = s.t;
  CHECK(dt == doctest::Approx(0.25 * std::pow(min_spacing(c), 2)));
  for (const auto& p : s.curve.points) CHECK(std::abs(std::abs(p.z) - (1.0 - dt)) < 1e-3 * dt);
  CHECK(s.step == 1);
  CHECK(step(initial_state(c), quick(1.0), 1e-7).t == doctest::Approx(1e-7));
}

TEST_CASE("step refuses crowded markers") {
  FlowConfig cfg = quick(1.0);
  cfg.stop_spacing = 0.1;
  CHECK_THROWS_AS(step(initial_state(make_circle(128, 1.0)), cfg), NeedsResampleError);
}

TEST_CASE("circle radius follows sqrt(1 - 2t)") {
  const auto r = run(make_circle(128, 1.0), quick(0.3), {0.1, 0.2});
  REQUIRE(r.checkpoints.size() == 4);
  CHECK(r.reason == StopReason::t_end);
  for (const auto& cp : r.checkpoints) {
    const double want = std::sqrt(1.0 - 2.0 * cp.t);
    for (const auto& p : cp.curve.points) CHECK(std::abs(std::abs(p.z) - want) < 5e-4);
  }
  CHECK(r.checkpoints[1].t == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(r.checkpoints.back().t == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("closed flows stop at the area threshold") {
  FlowConfig cfg = quick(1.0, 64);
  cfg.stop_area = 0.5;
  const auto r = run(make_circle(64, 1.0), cfg);
  CHECK(r.reason == StopReason::stop_area);
  // Area pi (1 - 2t) reaches 0.5 at t = (1 - 0.5/pi)/2.
  CHECK(r.checkpoints.back().t == doctest::Approx((1.0 - 0.5 / kPi) / 2.0).epsilon(2e-3));
  CHECK(*r.checkpoints.back().diagnostics.area <= 0.5);
}

TEST_CASE("length decreases and area drops at rate 2 pi") {
  const auto r = run(make_ellipse(128, 2.0, 1.0), quick(0.2), {0.05, 0.1, 0.15});
  std::vector<double> t, a;
  for (std::size_t i = 0; i < r.checkpoints.size(); ++i) {
    t.push_back(r.checkpoints[i].t);
    a.push_back(*r.checkpoints[i].diagnostics.area);
    if (i > 0) CHECK(r.checkpoints[i].diagnostics.length < r.checkpoints[i - 1].diagnostics.length);
  }
  CHECK(fitted_slope(t, a) == doctest::Approx(-2.0 * kPi).epsilon(5e-3));
}

TEST_CASE("flows are deterministic") {
  const auto a = run(make_ellipse(64, 1.5, 1.0), quick(0.05, 64));
  const auto b = run(make_ellipse(64, 1.5, 1.0), quick(0.05, 64));
  const auto& za = a.checkpoints.back().curve.points;
  const auto& zb = b.checkpoints.back().curve.points;
  REQUIRE(za.size() == zb.size());
  for (std::size_t i = 0; i < za.size(); ++i) CHECK(za[i].z == zb[i].z);
}

TEST_CASE("pinned straight segment is stationary") {
  FlowConfig cfg = quick(0.5, 64);
  cfg.end_condition = EndCondition::oracle_pinned;
  const auto seg = make_segment(64, {0.0, 0.0}, {1.0, 0.5});
  const auto r = run(seg, cfg);
  CHECK(sup_distance(r.checkpoints.back().curve, seg) < 1e-12);
}

TEST_CASE("scaling and rotation invariance on a circle") {
  FlowConfig cfg = quick(0.1, 64);
  CHECK(invariance_test(InvarianceKind::scaling, 2.0, make_circle(64, 1.0), cfg).sup_distance < 5e-3);
  CHECK(invariance_test(InvarianceKind::rotation, 1.0, make_ellipse(64, 1.5, 1.0), cfg).sup_distance < 5e-3);
  CHECK_THROWS_AS(invariance_test(InvarianceKind::scaling, 2.0, make_segment(64, 0.0, 1.0), cfg), TopologyError);
}

TEST_CASE("oracle comparison of a circle") {
  const auto r = run(make_circle(128, 1.0), quick(0.2));
  const auto cmp = compare_to_oracle(r.checkpoints, {Family::circle}, {-kPi, kPi});
  REQUIRE(cmp.size() == r.checkpoints.size());
  CHECK(cmp.front().sup_distance < 1e-4);
  CHECK(cmp.back().sup_distance < 1e-3);
}

TEST_CASE("blow-up carries the checkpoints recorded so far") {
  FamilySpec broken{Family::grim_reaper};
  broken.translation = {std::numeric_limits<double>::quiet_NaN(), 0.0};
  FlowConfig cfg = quick(1.0, 64);
  cfg.end_condition = EndCondition::oracle_pinned;
  cfg.oracle = broken;
  cfg.pin_theta_lo = -2.5;
  cfg.pin_theta_hi = 2.5;
  const auto init = sample_family({Family::grim_reaper}, 0.0, 64, -2.5, 2.5);
  CHECK_THROWS_AS(step(initial_state(init), cfg), NumericalBlowupError);
  try {
    run(init, cfg, {0.5});
    FAIL("expected FlowBlowupError");
  } catch (const FlowBlowupError& e) {
    CHECK(!e.checkpoints().empty());
  }
}

TEST_CASE("helpers") {
  CHECK(fitted_slope({0.0, 1.0, 2.0}, {1.0, 3.0, 5.0}) == doctest::Approx(2.0));
  CHECK(leftmost_x(make_circle(64, 1.0)) == doctest::Approx(-1.0).epsilon(1e-4));
  CHECK(to_string(StopReason::stop_area) == "stop_area");
  const auto d = compute_diagnostics(make_segment(10, 0.0, 2.0));
  CHECK_FALSE(d.area.has_value());
  CHECK(d.length == doctest::Approx(2.0));
}
