#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "modelset/errors.hpp"
#include "modelset/io.hpp"
#include "patches.hpp"

using namespace modelset;
namespace fs = std::filesystem;
using io::Json;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "modelset_unit" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("csv ingestion") {
  std::vector<std::string> warnings;
  std::istringstream three("x\n0.5\n1.5\n3.0\n");
  auto p = io::ingest_csv(three, &warnings);
  CHECK(p.size() == 3);
  CHECK_FALSE(p.scheme_backed());
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("region") != std::string::npos);
  CHECK(p.region.lo[0] == 0.5);
  CHECK(p.region.hi[0] == 3.0);

  std::istringstream planar("1,2\n3,4e-1\n");
  warnings.clear();
  auto q = io::ingest_csv(planar, &warnings, Box::cube(2, -5, 5));
  CHECK(q.dim == 2);
  CHECK(warnings.empty());

  std::istringstream dup("x\n1\n2\n1\n");
  CHECK(code_of([&] { io::ingest_csv(dup, nullptr); }) == ErrorCode::DuplicatePoint);

  std::istringstream bad("x\n1\nfoo\n");
  try {
    io::ingest_csv(bad, nullptr);
    FAIL("no parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::istringstream ragged("1,2\n3\n");
  CHECK(code_of([&] { io::ingest_csv(ragged, nullptr); }) == ErrorCode::ParseError);
}

TEST_CASE("json ingestion and file errors") {
  auto dir = scratch("ingest");
  {
    std::ofstream out(dir / "pts.json");
    out << R"({"points": [[0, 0], [1, 0], [0, 1]], "region": {"lo": [-1, -1], "hi": [2, 2]}})";
  }
  auto p = io::ingest((dir / "pts.json").string(), "json", nullptr);
  CHECK(p.size() == 3);
  CHECK(p.dim == 2);
  {
    std::ofstream out(dir / "broken.json");
    out << "{\n\"points\": [\n[0, 0],\n]\n}";
  }
  try {
    io::ingest((dir / "broken.json").string(), "json", nullptr);
    FAIL("no parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  CHECK(code_of([&] { io::ingest((dir / "missing.csv").string(), "csv", nullptr); }) == ErrorCode::IoError);
}

TEST_CASE("scheme and window json") {
  auto s = io::scheme_from_json(Json{{"fixture", "fibonacci"}});
  CHECK(s == fixtures::fibonacci_scheme());
  auto explicit_s = io::scheme_from_json(Json::parse(R"({"d": 1, "m": 1,
      "basis": [[1, ["1/2", "1/2"]], [1, ["1/2", "-1/2"]]], "arithmetic": {"mode": "quadratic", "D": 5}})"));
  CHECK(explicit_s == s);
  CHECK(explicit_s.is_exact());
  auto w = io::window_from_json(Json::parse(R"({"type": "intervals",
      "components": [{"lo": -1, "hi": ["-1/2", "1/2"], "lo_closed": false, "hi_closed": true}]})"), 5);
  CHECK(w.is_exact());
  CHECK(measure(w) == doctest::Approx(measure(fixtures::fibonacci_window())));
  CHECK(io::to_json(io::window_from_json(io::to_json(w), 5)) == io::to_json(w));
  CHECK(code_of([] { io::scheme_from_json(Json{{"fixture", "penrose"}}); }) == ErrorCode::ConfigError);
}

TEST_CASE("model density run reports the formula inputs") {
  auto cfg = io::parse_config(Json::parse(R"({"operation": "model_density",
      "scheme": {"fixture": "fibonacci"}, "window": {"fixture": "fibonacci"}})"));
  auto rep = io::run(cfg, false);
  const auto& v = rep.payload.at("value");
  CHECK(v.at("density").get<double>() == doctest::Approx(model_density(fixtures::fibonacci_scheme(),
                                                                       fixtures::fibonacci_window())));
  CHECK(v.contains("window_measure"));
  CHECK(v.contains("covolume"));
  CHECK(rep.to_json().at("version") == io::version());
}

TEST_CASE("config validation") {
  auto config_error = [](const char* text) {
    return code_of([&] { io::parse_config(Json::parse(text)); }) == ErrorCode::ConfigError;
  };
  CHECK(config_error(R"({"operation": "separation_fraction", "scheme": {"fixture": "fibonacci"},
      "window": {"fixture": "fibonacci"}, "params": {"samples": 10}})"));
  CHECK(config_error(R"({"operation": "model_density", "colour": "red"})"));
  CHECK(config_error(R"({"operation": "no_such_op"})"));
  CHECK(config_error(R"({"operation": "model_density", "seed": -4})"));
  CHECK(config_error(R"({"batch": []})"));
  CHECK_FALSE(io::needs_seed("diffraction_table", Json{{"controls", 0}}));
  CHECK(io::needs_seed("diffraction_table", Json::object()));
}

TEST_CASE("batch runs pass only when every run passes") {
  auto dir = scratch("batch");
  auto j = Json::parse(R"({"scheme": {"fixture": "fibonacci"}, "window": {"fixture": "fibonacci"},
      "batch": [
        {"name": "ok", "operation": "model_density", "expect": [{"path": "/density", "min": 0.72, "max": 0.73}]},
        {"name": "bad", "operation": "model_density", "expect": [{"path": "/density", "max": 0.5}]}
      ]})");
  j["output_dir"] = dir.string();
  auto rep = io::run(io::parse_config(j));
  CHECK_FALSE(rep.pass);
  const auto& runs = rep.payload.at("runs");
  REQUIRE(runs.size() == 2);
  CHECK(runs[0].at("pass") == true);
  CHECK(runs[1].at("pass") == false);
  CHECK(fs::exists(dir / "report.json"));
  CHECK(fs::exists(dir / "ok" / "report.json"));
  CHECK(fs::exists(dir / "timing.json"));
  std::ifstream in(dir / "report.json");
  auto doc = Json::parse(in);
  CHECK_FALSE(doc.contains("timing"));

  j["batch"].erase(1);
  CHECK(io::run(io::parse_config(j), false).pass);
}

TEST_CASE("csv and svg side tables") {
  auto p = enumerate_cut(fixtures::fibonacci_scheme(), fixtures::fibonacci_window(), Box::cube(1, 0, 5));
  std::ostringstream csv;
  io::write_points_csv(p, csv);
  auto text = csv.str();
  CHECK(text.rfind("n0,n1,x,star_x\n", 0) == 0);
  CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) == p.size() + 1);

  auto t = diffraction_table(restrict_to(patches::fib_large(), Box::cube(1, -1100, 1100)), *patches::fibonacci(), 1.0,
                             2, 1, patches::boxes_1d({1000}));
  std::ostringstream peaks;
  io::write_peaks_csv(t, 1, peaks);
  CHECK(peaks.str().rfind("kx,re,im,intensity,is_control\n", 0) == 0);
  auto svg = io::diffraction_svg(t);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
}
