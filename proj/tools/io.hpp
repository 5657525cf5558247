#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "schwarzflow/curve_geometry.hpp"
#include "schwarzflow/flow_engine.hpp"
#include "schwarzflow/schwarz_calculus.hpp"

namespace schwarzflow::io {

using json = nlohmann::ordered_json;

/// 17 significant digits, '.' separator, independent of the global locale.
std::string format_double(double v);

/// Writes to a sibling temporary and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

/// CSV with header `t,theta,x,y`, one row per sample.
std::string curve_csv(const CurveSamples& curve, double t);

struct LoadedCurve {
  double t = 0.0;
  CurveSamples curve;
};
/// Parses the curve_csv schema. The file carries no topology, so the caller
/// supplies it. Throws std::runtime_error on malformed input.
LoadedCurve parse_curve_csv(std::string_view text, Topology topology);
LoadedCurve load_curve_csv(const std::filesystem::path& path, Topology topology);

json curve_json(const CurveSamples& curve, double t);

/// `t,length,area,max_kappa,isoperimetric`; area and ratio are empty for open curves.
std::string diagnostics_csv(const std::vector<FlowState>& states);

json report_json(const ResidualReport& report, double tolerance, bool passed);

struct SvgCurve {
  std::vector<Complex> points;
  bool closed = false;
  std::string label;
};
/// Stroke-only paths with equal axis scaling, y pointing up.
std::string render_svg(const std::vector<SvgCurve>& curves, std::string_view title);

}  // namespace schwarzflow::io
