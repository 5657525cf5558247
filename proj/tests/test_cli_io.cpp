#include <doctest.h>

#include <clocale>
#include <filesystem>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>

#include "commands.hpp"
#include "figure.hpp"
#include "io.hpp"

using namespace schwarzflow;
using namespace schwarzflow::io;
namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("schwarzflow_test_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

int cli(std::vector<std::string> args) { return run_cli(args); }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("doubles are written with 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(std::stod(format_double(kPi)) == kPi);
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("CSV output ignores the process locale") {
  const char* old = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = old ? old : "C";
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") == nullptr) std::setlocale(LC_NUMERIC, "C");
  const auto csv = curve_csv(make_circle(8, 1.5), 0.25);
  std::setlocale(LC_NUMERIC, saved.c_str());
  CHECK(lines(csv)[0] == "t,theta,x,y");
  CHECK(lines(csv)[1].find(';') == std::string::npos);
  CHECK(lines(csv)[1].rfind("0.25,", 0) == 0);
}

TEST_CASE("CSV round trip is bitwise") {
  const auto c = sample_family_arclength({Family::paperclip}, -1.0, 64, -kPi, kPi);
  const auto back = parse_curve_csv(curve_csv(c, -1.0), Topology::closed);
  CHECK(back.t == -1.0);
  REQUIRE(back.curve.size() == c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(back.curve.points[i].z == c.points[i].z);
    CHECK(back.curve.points[i].theta == c.points[i].theta);
  }
  CHECK_THROWS(parse_curve_csv("x,y\n1,2\n", Topology::open));
  CHECK_THROWS(parse_curve_csv("t,theta,x,y\n0,0,abc,1\n", Topology::open));
}

TEST_CASE("atomic writes create parents and leave no temp files") {
  TempDir d;
  const fs::path p = d / "a/b/out.txt";
  write_atomic(p, "hello");
  CHECK(read_file(p) == "hello");
  write_atomic(p, "again");
  CHECK(read_file(p) == "again");
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(p.parent_path())) files += e.is_regular_file();
  CHECK(files == 1);
}

TEST_CASE("sample command writes the circle in order") {
  TempDir d;
  CHECK(cli({"sample", "--family", "circle", "--t", "0", "--n", "4", "--out", d / "c.csv"}) == kExitOk);
  const auto l = lines(read_file(d / "c.csv"));
  REQUIRE(l.size() == 5);
  CHECK(l[1].rfind("0,0,1,0", 0) == 0);
  CHECK(fs::exists(d / "c.csv.manifest.json"));
  const auto m = json::parse(read_file(d / "c.csv.manifest.json"));
  CHECK(m["command"] == "sample");
  CHECK(m.contains("version"));
}

TEST_CASE("sample outside the window is a usage error") {
  TempDir d;
  CHECK(cli({"sample", "--family", "paperclip", "--t", "0.1", "--out", d / "p.csv"}) == kExitUsage);
  CHECK_FALSE(fs::exists(d / "p.csv"));
  CHECK(cli({"sample", "--family", "nonsense", "--t", "0"}) == kExitUsage);
  CHECK(cli({"bogus"}) == kExitUsage);
  CHECK(cli({"--help"}) == kExitOk);
}

TEST_CASE("residual command reports pass and fail") {
  TempDir d;
  CHECK(cli({"residual", "--identity", "pde", "--family", "paperclip", "--t", "-1", "--n", "128", "--out",
             d / "r.json"}) == kExitOk);
  const auto r = json::parse(read_file(d / "r.json"));
  CHECK(r["max_abs"].get<double>() < 1e-10);
  CHECK(r["passed"] == true);
  CHECK(cli({"residual", "--identity", "pde", "--family", "paperclip", "--t", "-1", "--flip-adot", "--out",
             d / "f.json"}) == kExitVerificationFailed);
  CHECK(cli({"residual", "--identity", "pde", "--family", "paperclip", "--t", "-1", "--n", "128", "--mode", "fd",
             "--out", d / "fd.json"}) == kExitOk);
}

TEST_CASE("flow and compare commands") {
  TempDir d;
  CHECK(cli({"flow", "--family", "circle", "--n", "64", "--t-end", "0.2", "--checkpoints", "0.1", "--out-dir",
             d / "run"}) == kExitOk);
  CHECK(fs::exists(d / "run/diagnostics.csv"));
  CHECK(fs::exists(d / "run/manifest.json"));
  const std::string cp = d / "run/checkpoint_001.csv";
  REQUIRE(fs::exists(cp));
  CHECK(cli({"compare", "--family", "circle", cp, "--tol", "1e-3", "--out", d / "cmp.json"}) == kExitOk);
  CHECK(cli({"compare", "--family", "circle", cp, "--tol", "1e-12", "--out", d / "cmp2.json"}) ==
        kExitVerificationFailed);
  CHECK(cli({"flow", "--family", "circle", "--t-end", "0.1", "--cfl", "0.9", "--out-dir", d / "bad"}) == kExitUsage);
}

TEST_CASE("segment flow stays put") {
  TempDir d;
  CHECK(cli({"flow", "--segment", "0,0,1,0", "--ends", "pinned", "--n", "64", "--t-end", "0.1", "--out-dir",
             d / "seg"}) == kExitOk);
  const auto last = load_curve_csv(d / "seg/checkpoint_001.csv", Topology::open);
  for (const auto& p : last.curve.points) CHECK(std::abs(p.z.imag()) < 1e-12);
}

TEST_CASE("invariance command") {
  TempDir d;
  CHECK(cli({"invariance", "--kind", "scaling", "--param", "2", "--n", "64", "--tau", "0.05", "--out",
             d / "inv.json"}) == kExitOk);
  CHECK(json::parse(read_file(d / "inv.json"))["sup_distance"].get<double>() < 5e-3);
}

TEST_CASE("figure command writes SVG, sidecars and replays exactly") {
  TempDir d;
  const std::string svg = d / "fig.svg";
  CHECK(cli({"figure", "--name", "fig1-left", "--n", "128", "--out", svg}) == kExitOk);
  const std::string text = read_file(svg);
  CHECK(text.find("<svg") != std::string::npos);
  CHECK(text.find("<path") != std::string::npos);
  const std::string side = d / sidecar_name("fig1-left", -1.0);
  REQUIRE(fs::exists(side));
  const std::string before = read_file(side);
  fs::remove(side);
  CHECK(cli({"replay", svg + ".manifest.json"}) == kExitOk);
  CHECK(read_file(side) == before);
  CHECK(cli({"figure", "--name", "fig2", "--out", d / "x.svg"}) == kExitUsage);
}

TEST_CASE("svg rendering") {
  const auto s = render_svg({{make_circle(16, 1.0).positions(), true, "unit"}}, "demo");
  CHECK(s.find("data-label=\"unit\"") != std::string::npos);
  CHECK(s.find("viewBox") != std::string::npos);
}

TEST_CASE("figure curves") {
  const auto left = make_figure("fig1-left", 64);
  CHECK(left.curves.size() == 4);
  const auto right = make_figure("fig1-right", 64);
  CHECK(right.curves.size() == 3);
  for (const auto& c : right.curves)
    for (const auto& p : c.samples.points) CHECK(std::abs(p.z.imag()) <= 1.5 * kPi + 1e-9);
  CHECK_THROWS(make_figure("nope", 64));
}
