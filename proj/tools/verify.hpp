#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "io.hpp"

namespace schwarzflow::io {

struct PropertyCheck {
  std::string suite;
  std::string name;
  bool passed = false;
  double value = 0.0;      // measured quantity (residual, distance, ratio, ...)
  double tolerance = 0.0;  // bound it was compared with
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  /// Negate a-dot inside the analytic S_t (self-test of the suite).
  bool flip_adot = false;
};

/// "exact", "flow", "invariance" or "all".
std::vector<PropertyCheck> run_suite(std::string_view suite, const VerifyOptions& opts = {});

/// Largest |(x - x_tip) + log cos y| between the paperclip near its theta = 0
/// tip (|theta| <= 1) and the grim reaper through the same tip.
double ancient_limit_error(double t);
/// Sup deviation of the paperclip, scaled by its largest radius, from the unit circle.
double terminal_limit_error(double t);

std::string summary_table(const std::vector<PropertyCheck>& checks);
json summary_json(const std::vector<PropertyCheck>& checks);

}  // namespace schwarzflow::io
