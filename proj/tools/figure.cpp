#include "figure.hpp"

#include <cmath>
#include <cstdint>
#include <locale>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/tools/toms748_solve.hpp>

#include "io.hpp"

namespace schwarzflow::io {
namespace {

constexpr double kPi = std::numbers::pi;

// y decreases monotonically in theta along the hairclip (one period of y per
// period of theta), so the parameter of a given height is a bracketed root.
double hairclip_theta_at_height(const FamilySpec& spec, double t, double y) {
  auto f = [&](double th) { return eval_point(spec, t, th).imag() - y; };
  double lo = -std::abs(y) - 2.0 * kPi, hi = std::abs(y) + 2.0 * kPi;
  std::uintmax_t iters = 200;
  auto tol = boost::math::tools::eps_tolerance<double>(50);
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace

Figure make_figure(std::string_view name, std::size_t n) {
  Figure fig;
  fig.name = std::string(name);
  if (name == "fig1-left") {
    fig.title = "paperclip at t = -3, -2, -1, -0.1";
    fig.family = FamilySpec{Family::paperclip};
    for (double t : {-3.0, -2.0, -1.0, -0.1})
      fig.curves.push_back({t, sample_family_arclength(fig.family, t, n, -kPi, kPi)});
  } else if (name == "fig1-right") {
    fig.title = "hairclip at t = -3, -1, 2";
    fig.family = FamilySpec{Family::hairclip};
    for (double t : {-3.0, -1.0, 2.0}) {
      const double lo = hairclip_theta_at_height(fig.family, t, 1.5 * kPi);
      const double hi = hairclip_theta_at_height(fig.family, t, -1.5 * kPi);
      fig.curves.push_back({t, sample_family_arclength(fig.family, t, n, lo, hi)});
    }
  } else {
    throw std::invalid_argument("unknown figure '" + std::string(name) + "' (fig1-left | fig1-right)");
  }
  return fig;
}

std::string figure_svg(const Figure& fig) {
  std::vector<SvgCurve> curves;
  for (const auto& c : fig.curves) {
    std::ostringstream label;
    label.imbue(std::locale::classic());
    label << "t=" << c.t;
    curves.push_back({c.samples.positions(), c.samples.closed(), label.str()});
  }
  return render_svg(curves, fig.title);
}

std::string sidecar_name(std::string_view figure_name, double t) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << figure_name << "_t" << t << ".csv";
  return os.str();
}

}  // namespace schwarzflow::io
