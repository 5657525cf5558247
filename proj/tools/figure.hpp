#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "schwarzflow/exact_solutions.hpp"

namespace schwarzflow::io {

struct FigureCurve {
  double t = 0.0;
  CurveSamples samples;
};

struct Figure {
  std::string name;
  std::string title;
  FamilySpec family;
  std::vector<FigureCurve> curves;
};

/// "fig1-left": paperclip at t = -3, -2, -1, -0.1 (closed).
/// "fig1-right": hairclip at t = -3, -1, 2 over y in [-3pi/2, 3pi/2] (open).
/// Throws std::invalid_argument for other names.
Figure make_figure(std::string_view name, std::size_t n = 512);

std::string figure_svg(const Figure& fig);

/// Sidecar file name for one curve, e.g. "fig1-left_t-0.1.csv".
std::string sidecar_name(std::string_view figure_name, double t);

}  // namespace schwarzflow::io
