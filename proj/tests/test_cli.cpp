#include "commands.hpp"
#include "problem_file.hpp"
#include "ssde/error.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ssde;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ssde");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string problem(const std::string& name) { return test::kProblemDir + "/" + name; }

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "ssde_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const auto p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (l == line) return true;
  return false;
}

}  // namespace

TEST_CASE("analyze: unique chart problem") {
  const auto r = run_cli({"analyze", problem("chart_1_4.json")});
  CHECK(r.code == cli::kExitOk);
  CHECK(has_line(r.out, "kind = Unique"));
  CHECK(has_line(r.out, "A = 9"));
  CHECK(has_line(r.out, "y = 23/15, 31/5"));
  CHECK(has_line(r.out, "breakpoints = 1, 2, 4"));
  CHECK(has_line(r.out, "contraction_factor = 1/3"));
}

TEST_CASE("analyze: transition family") {
  const auto r = run_cli({"analyze", problem("transition.json")});
  CHECK(r.code == cli::kExitOk);
  CHECK(has_line(r.out, "kind = Family"));
  CHECK(has_line(r.out, "y = 0 + 1*A, 0 + 2*A"));
}

TEST_CASE("analyze: inconsistent exits 3") {
  const auto r = run_cli({"analyze", problem("inconsistent.json")});
  CHECK(r.code == cli::kExitNoAdmissibleA);
  CHECK(has_line(r.out, "kind = Inconsistent"));
  CHECK(has_line(r.out, "alpha = 0"));
  CHECK(has_line(r.out, "beta = 1/4"));
}

TEST_CASE("analyze: invalid inputs exit 2 naming the invariant") {
  const auto tiling = write_file("tiling.json", R"({"interval": [0, 1], "order": 1, "y0": 0,
    "maps": [{"a": "1/2", "d": 1, "e": 0, "f": 0}]})");
  auto r = run_cli({"analyze", tiling.string()});
  CHECK(r.code == cli::kExitInvalid);
  CHECK(r.err.find("TilingError") != std::string::npos);

  const auto shear = write_file("shear.json", R"({"interval": [0, 1], "order": 1, "y0": 0,
    "maps": [{"a": 1, "c": "1/2", "d": 1, "e": 0, "f": 0}]})");
  r = run_cli({"analyze", shear.string()});
  CHECK(r.code == cli::kExitInvalid);

  const auto unknown = write_file("unknown.json", R"({"interval": [0, 1], "order": 1, "y0": 0,
    "maps": [{"a": 1, "d": 1, "e": 0, "f": 0}], "colour": 3})");
  CHECK(run_cli({"analyze", unknown.string()}).code == cli::kExitInvalid);

  const auto garbled = write_file("garbled.json", "{not json");
  CHECK(run_cli({"analyze", garbled.string()}).code == cli::kExitInvalid);
  CHECK(run_cli({"analyze", "/nonexistent/problem.json"}).code == cli::kExitInvalid);
  CHECK(run_cli({"frobnicate"}).code == cli::kExitInvalid);
}

TEST_CASE("analyze: order-2 problems skip the boundary system") {
  const auto r = run_cli({"analyze", problem("cam.json")});
  CHECK(r.code == cli::kExitOk);
  CHECK(has_line(r.out, "l_condition_sum = 0"));
  CHECK(has_line(r.out, "contraction_factor = 1/2"));
}

TEST_CASE("echo round trip preserves the piecemealing") {
  for (const char* name : {"chart_1_4.json", "transition.json", "cam.json", "inconsistent.json"}) {
    CAPTURE(name);
    const auto original = cli::load_problem(problem(name));
    const std::string echoed = cli::echo_problem(original);
    const auto again = cli::parse_problem(echoed);
    CHECK(cli::echo_problem(again) == echoed);
    const auto p1 = cli::build_piecemealing(original);
    const auto p2 = cli::build_piecemealing(again);
    REQUIRE(p1.is_exact());
    REQUIRE(p2.is_exact());
    CHECK(p1.size() == p2.size());
    for (std::size_t i = 0; i < p1.size(); ++i) {
      CHECK(*p1.maps()[i].a.exact == *p2.maps()[i].a.exact);
      CHECK(*p1.maps()[i].d.exact == *p2.maps()[i].d.exact);
      CHECK(*p1.maps()[i].e.exact == *p2.maps()[i].e.exact);
      CHECK(*p1.maps()[i].f.exact == *p2.maps()[i].f.exact);
    }
    const auto b1 = p1.exact_breakpoints(), b2 = p2.exact_breakpoints();
    CHECK(std::vector<Rational>(b1.begin(), b1.end()) == std::vector<Rational>(b2.begin(), b2.end()));
  }
  const auto r = run_cli({"analyze", "--echo", problem("chart_1_4.json")});
  CHECK(r.out.find("\"-22/15\"") != std::string::npos);
}

TEST_CASE("parse_problem reads numbers exactly") {
  const auto f = cli::parse_problem(R"({"interval": [0, 1], "order": 1, "y0": 0.1,
    "maps": [{"a": 0.5, "d": 2, "e": 0, "f": 0}, {"a": -0.5, "d": 2, "e": 1, "f": 0}], "A": "1/2"})");
  REQUIRE(f.y0.value.exact.has_value());
  CHECK(*f.y0.value.exact == Rational(1, 10));
  CHECK(cli::build_piecemealing(f).is_exact());
  CHECK_THROWS_AS(cli::parse_problem(R"({"interval": [0, 1], "order": 1, "y0": 0, "yprime0": 1,
    "maps": [{"a": 1, "d": 1, "e": 0, "f": 0}]})"),
                  Error);
}

TEST_CASE("solve: transition CSV reaches 1 at x = 1") {
  const auto csv = scratch("transition.csv");
  const auto report = scratch("transition_report.txt");
  const auto r = run_cli({"solve", problem("transition.json"), "--out", csv.string(), "--report",
                          report.string()});
  CHECK(r.code == cli::kExitOk);
  std::ifstream in(csv);
  std::string line, last;
  std::getline(in, line);
  CHECK(line == "x,y");
  while (std::getline(in, line)) last = line;
  const auto comma = last.find(',');
  CHECK(std::stod(last.substr(0, comma)) == 1.0);
  CHECK(std::abs(std::stod(last.substr(comma + 1)) - 1.0) <= 1e-6);
  std::stringstream rep;
  rep << std::ifstream(report).rdbuf();
  CHECK(has_line(rep.str(), "converged = true"));
}

TEST_CASE("solve: exit codes") {
  CHECK(run_cli({"solve", problem("inconsistent.json"), "--out", scratch("x.csv").string()}).code ==
        cli::kExitNoAdmissibleA);
  CHECK(run_cli({"solve", problem("transition.json"), "--out", scratch("y.csv").string(),
                 "--max-iter", "3"})
            .code == cli::kExitNotConverged);
  const auto steep = write_file("steep.json", R"({"interval": [0, 1], "order": 1, "y0": 0, "A": 0,
    "maps": [{"a": "1/2", "d": 4, "e": 0, "f": 0}, {"a": "-1/2", "d": 4, "e": 1, "f": 0}]})");
  CHECK(run_cli({"solve", steep.string(), "--out", scratch("z.csv").string()}).code ==
        cli::kExitNotContractive);
  CHECK(run_cli({"solve", steep.string(), "--force", "--out", scratch("z.csv").string()}).code ==
        cli::kExitOk);
}

TEST_CASE("solve: cam report is experimental") {
  const auto report = scratch("cam_report.txt");
  const auto r = run_cli({"solve", problem("cam.json"), "--out", scratch("cam.csv").string(),
                          "--report", report.string()});
  CHECK(r.code == cli::kExitOk);
  std::stringstream rep;
  rep << std::ifstream(report).rdbuf();
  CHECK(has_line(rep.str(), "experimental = true"));
}

TEST_CASE("iterate writes the expected files") {
  const auto dir = scratch("iter_transition");
  fs::remove_all(dir);
  CHECK(run_cli({"iterate", problem("transition.json"), "5", "--outdir", dir.string()}).code == 0);
  for (int i = 0; i <= 5; ++i) CHECK(fs::exists(dir / ("iterate_" + std::to_string(i) + ".csv")));
  CHECK_FALSE(fs::exists(dir / "iterate_6.csv"));

  const auto d0 = scratch("iter_zero");
  fs::remove_all(d0);
  CHECK(run_cli({"iterate", problem("transition.json"), "0", "--outdir", d0.string()}).code == 0);
  CHECK(std::distance(fs::directory_iterator(d0), fs::directory_iterator{}) == 1);

  const auto dc = scratch("iter_cam");
  fs::remove_all(dc);
  CHECK(run_cli({"iterate", problem("cam.json"), "4", "--outdir", dc.string()}).code == 0);
  CHECK(fs::exists(dc / "iterate_4.csv"));
  CHECK(fs::exists(dc / "image_4.csv"));
  CHECK(fs::exists(dc / "second_diff_4.csv"));
}

TEST_CASE("residual command") {
  const auto r = run_cli({"residual", problem("classic_transition.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("residual = ") != std::string::npos);
}

TEST_CASE("bump command") {
  const auto csv = scratch("bump.csv");
  CHECK(run_cli({"bump", "0", "1", "2", "3", "--grid", "401", "--out", csv.string()}).code == 0);
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  int rows = 0;
  bool saw_half = false, saw_plateau = false;
  while (std::getline(in, line)) {
    ++rows;
    const auto comma = line.find(',');
    const double x = std::stod(line.substr(0, comma)), y = std::stod(line.substr(comma + 1));
    if (x <= 0 || x >= 3) CHECK(y == 0.0);
    if (std::abs(x - 1.5) < 1e-12) saw_plateau = (y == 1.0);
    if (std::abs(x - 0.5) < 1e-12) saw_half = std::abs(y - 0.5) <= 1e-6;
  }
  CHECK(rows == 401);
  CHECK(saw_plateau);
  CHECK(saw_half);
  CHECK(run_cli({"bump", "0", "2", "1", "3"}).code == cli::kExitInvalid);
}
