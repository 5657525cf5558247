#include "io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <unistd.h>

namespace schwarzflow::io {
namespace fs = std::filesystem;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  std::array<char, 40> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

void write_atomic(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write failed: " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string curve_csv(const CurveSamples& curve, double t) {
  std::string out = "t,theta,x,y\n";
  const std::string ts = format_double(t);
  for (const auto& p : curve.points) {
    out += ts;
    out += ',';
    out += format_double(p.theta);
    out += ',';
    out += format_double(p.z.real());
    out += ',';
    out += format_double(p.z.imag());
    out += '\n';
  }
  return out;
}

namespace {

double parse_number(std::string_view field, std::size_t line) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r'))
    field.remove_suffix(1);
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size())
    throw std::runtime_error("csv line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
  return v;
}

}  // namespace

LoadedCurve parse_curve_csv(std::string_view text, Topology topology) {
  std::vector<Complex> z;
  std::vector<double> th;
  LoadedCurve out;
  std::size_t line_no = 0;
  bool header = true;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line != "t,theta,x,y") throw std::runtime_error("csv: expected header t,theta,x,y");
      continue;
    }
    std::array<double, 4> f{};
    std::size_t k = 0;
    for (; k < 4; ++k) {
      const auto comma = line.find(',');
      if (k < 3 && comma == std::string_view::npos) break;
      f[k] = parse_number(line.substr(0, comma), line_no);
      line = comma == std::string_view::npos ? std::string_view{} : line.substr(comma + 1);
    }
    if (k != 4) throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected 4 fields");
    if (z.empty()) out.t = f[0];
    th.push_back(f[1]);
    z.emplace_back(f[2], f[3]);
  }
  if (z.empty()) throw std::runtime_error("csv: no samples");
  out.curve = make_samples(z, topology, th);
  return out;
}

LoadedCurve load_curve_csv(const fs::path& path, Topology topology) {
  return parse_curve_csv(read_file(path), topology);
}

json curve_json(const CurveSamples& curve, double t) {
  json j;
  j["t"] = t;
  j["topology"] = curve.closed() ? "closed" : "open";
  j["total_length"] = curve.total_length;
  json pts = json::array();
  for (const auto& p : curve.points) pts.push_back({{"theta", p.theta}, {"x", p.z.real()}, {"y", p.z.imag()}});
  j["points"] = std::move(pts);
  return j;
}

std::string diagnostics_csv(const std::vector<FlowState>& states) {
  std::string out = "t,length,area,max_kappa,isoperimetric\n";
  for (const auto& s : states) {
    const auto& d = s.diagnostics;
    out += format_double(s.t) + ',' + format_double(d.length) + ',';
    if (d.area) out += format_double(*d.area);
    out += ',' + format_double(d.max_kappa) + ',';
    if (d.isoperimetric) out += format_double(*d.isoperimetric);
    out += '\n';
  }
  return out;
}

json report_json(const ResidualReport& report, double tolerance, bool passed) {
  json j;
  j["identity"] = report.identity;
  j["mode"] = std::string(to_string(report.mode));
  j["n"] = report.n;
  j["h"] = report.h;
  j["max_abs"] = report.max_abs;
  j["tolerance"] = tolerance;
  j["passed"] = passed;
  if (!report.components.empty()) {
    json c = json::object();
    for (const auto& [name, v] : report.components) c[name] = v;
    j["components"] = std::move(c);
  }
  json pts = json::array();
  for (const auto& p : report.per_point) pts.push_back({p.theta, p.residual});
  j["per_point"] = std::move(pts);
  return j;
}

std::string render_svg(const std::vector<SvgCurve>& curves, std::string_view title) {
  static constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c",
                                                         "#9467bd", "#ff7f0e", "#17becf"};
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& c : curves)
    for (const auto& p : c.points) {
      xmin = std::min(xmin, p.real());
      xmax = std::max(xmax, p.real());
      ymin = std::min(ymin, p.imag());
      ymax = std::max(ymax, p.imag());
    }
  if (!(xmax >= xmin)) xmin = xmax = ymin = ymax = 0.0;
  const double pad = 0.05 * std::max({xmax - xmin, ymax - ymin, 1e-9});
  xmin -= pad;
  xmax += pad;
  ymin -= pad;
  ymax += pad;
  // One user unit per plot unit keeps the aspect ratio equal; the pixel size
  // is fixed by the larger extent.
  const double w = xmax - xmin, h = ymax - ymin;
  const double px = 600.0 / std::max(w, h);

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_double(std::round(w * px)) +
         "\" height=\"" + format_double(std::round(h * px)) + "\" viewBox=\"" + format_double(xmin) + ' ' +
         format_double(-ymax) + ' ' + format_double(w) + ' ' + format_double(h) +
         "\" preserveAspectRatio=\"xMidYMid meet\">\n";
  out += "<title>" + std::string(title) + "</title>\n";
  const std::string stroke = format_double(1.5 / px);
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& c = curves[i];
    out += "<path data-label=\"" + c.label + "\" fill=\"none\" stroke=\"" + kColors[i % kColors.size()] +
           "\" stroke-width=\"" + stroke + "\" d=\"";
    for (std::size_t k = 0; k < c.points.size(); ++k) {
      out += k == 0 ? "M" : " L";
      out += format_double(c.points[k].real()) + ',' + format_double(-c.points[k].imag());
    }
    if (c.closed) out += " Z";
    out += "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace schwarzflow::io
