#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "inscribed/census.hpp"
#include "inscribed/document.hpp"
#include "inscribed/svg.hpp"

using namespace inscribed;

namespace {

constexpr const char* kTriangle = R"({"schema_version":1,"vertices":[[0,0],[1,0],[0.51,0.87]]})";

const Analysis& triangle_analysis() {
  static const Analysis a = analyze(parse_polygon(kTriangle).polygon);
  return a;
}

ErrorKind parse_error(std::string_view text) {
  try {
    parse_polygon(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::NotFound;
}

int count(const std::string& s, const std::string& needle) {
  int n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("polygon documents") {
  const PolygonDocument doc = parse_polygon(kTriangle);
  CHECK(doc.polygon.size() == 3);
  CHECK_FALSE(doc.reversed);
  const PolygonDocument rev = parse_polygon(R"({"schema_version":1,"vertices":[[0.51,0.87],[1,0],[0,0]]})");
  CHECK(rev.reversed);
  CHECK(signed_area(rev.polygon) > 0);

  CHECK(parse_error(R"({"schema_version":1,"vertices":[[0,0],[1,1],[1,0],[0,1]]})") == ErrorKind::NotSimple);
  CHECK(parse_error(R"({"schema_version":1,"vertices":[[0,0],[1,1]]})") == ErrorKind::TooFewVertices);
  CHECK(parse_error(R"({"schema_version":2,"vertices":[[0,0],[1,0],[0,1]]})") == ErrorKind::SchemaError);
  CHECK(parse_error(R"({"vertices":[[0,0],[1,0],[0,1]]})") == ErrorKind::SchemaError);
  CHECK(parse_error(R"({"schema_version":1,"vertices":[[0,0],[1,0],[0]]})") == ErrorKind::SchemaError);
  CHECK(parse_error("not json") == ErrorKind::SchemaError);

  const std::string text = serialize_polygon(doc.polygon);
  CHECK(serialize_polygon(parse_polygon(text).polygon) == text);
}

TEST_CASE("analysis documents round-trip byte for byte") {
  std::vector<const Analysis*> analyses{&triangle_analysis()};
  CensusOptions o;
  o.count = 4;
  o.seed = 8;
  o.keep_analyses = true;
  const auto census = run_census(o);
  for (const CensusEntry& e : census) analyses.push_back(&*e.analysis);
  for (const Analysis* a : analyses) {
    MetadataRecord meta;
    meta.seed = 12345678901234ull;
    const std::string once = serialize(make_document(*a, check_generic(a->polygon), meta));
    const AnalysisDocument back = parse_analysis(once);
    CHECK(serialize(back) == once);
    CHECK(back.parity.omega == a->parity.omega);
    CHECK(back.components.size() == a->components.size());
    CHECK(back.segments.size() == a->segments.size());
  }
  CHECK_THROWS_AS(parse_analysis(R"({"schema_version":1})"), Error);
}

TEST_CASE("measure documents") {
  const Polygon p = parse_polygon(kTriangle).polygon;
  const BoundaryMeasure arc = parse_measure(R"({"schema_version":1,"kind":"arclength"})", p);
  CHECK(arc.arc_mass(0, 1) == doctest::Approx(1.0 / p.perimeter()));
  const BoundaryMeasure w = parse_measure(
      R"({"schema_version":1,"edges":[{"weight":2},{"weight":1,"density":[0,1,0]},{"weight":1}]})", p);
  CHECK(w.arc_mass(0, 1) == doctest::Approx(0.5));
  CHECK(w.arc_mass(1, 1.5) == doctest::Approx(0.125));
  CHECK_THROWS_AS(parse_measure(R"({"schema_version":1,"edges":[{"weight":1}]})", p), Error);
  CHECK_THROWS_AS(parse_measure(R"({"schema_version":1,"edges":[{"weight":-1},{"weight":1},{"weight":1}]})", p), Error);
}

TEST_CASE("svg rendering") {
  const Analysis& a = triangle_analysis();
  const std::string svg = render_svg(a);
  CHECK(svg == render_svg(a));
  CHECK(count(svg, "class=\"family\"") == 3);
  CHECK(count(svg, "class=\"chord\"") == 6);
  CHECK(count(svg, "stroke=\"#8c8c8c\"") == 0);
  CHECK(svg.find("\xCE\xA9 = 3") != std::string::npos);
  CHECK(svg.find("\xCE\xA9_H = 3") != std::string::npos);
  CHECK(svg.find("\xCE\xA9_E = 0") != std::string::npos);
  CHECK(count(svg, "<polygon ") == 1 + 3 * 40);

  Analysis empty = a;
  empty.components.clear();
  const std::string bare = render_svg(empty);
  CHECK(count(bare, "class=\"family\"") == 0);
  CHECK(count(bare, "class=\"chord\"") == 0);
  CHECK(bare.find("class=\"outline\"") != std::string::npos);
  CHECK(bare.find("class=\"legend\"") != std::string::npos);
}

TEST_CASE("census rows") {
  CensusOptions o;
  o.count = 5;
  o.seed = 3;
  const auto entries = run_census(o);
  std::vector<int> sides;
  for (const CensusEntry& e : entries) {
    CHECK(e.theorems_hold());
    sides.push_back(e.sides);
  }
  CHECK(sides == std::vector<int>{5, 7, 9, 11, 13});
  const std::string csv = census_csv(entries);
  CHECK(count(csv, "\n") == 6);
  CHECK(csv.rfind("index,sides,seed", 0) == 0);
  o.threads = 1;
  CHECK(census_csv(run_census(o)).substr(0, 60) == csv.substr(0, 60));
  CHECK(census_side_counts(4, 8) == std::vector<int>{5, 7});
  CHECK(census_side_counts(6, 6) == std::vector<int>{6});
}

#ifdef INSCRIBED_CLI
namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(INSCRIBED_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("inscribed_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("cli exit codes") {
  const std::string tri = write_temp("tri.json", kTriangle);
  const std::string square = write_temp("square.json", R"({"schema_version":1,"vertices":[[0,0],[1,0],[1,1],[0,1]]})");
  const std::string broken = write_temp("broken.json", R"({"schema_version":1,"vertices":[[0,0],)");
  const std::string out = (std::filesystem::temp_directory_path() / "inscribed_test_out.json").string();
  CHECK(run("analyze " + tri + " --out " + out) == 0);
  CHECK(parse_analysis([&] {
          std::ifstream in(out);
          return std::string(std::istreambuf_iterator<char>(in), {});
        }())
            .parity.omega == 3);
  CHECK(run("analyze " + square) == 2);
  CHECK(run("check-generic " + square) == 2);
  CHECK(run("check-generic " + tri) == 0);
  CHECK(run("analyze " + broken) == 4);
  CHECK(run("analyze /nonexistent/polygon.json") == 4);
  CHECK(run("perturb " + square + " --eps 1e-3 --seed 4 --out " + out) == 0);
  CHECK(run("check-generic " + out) == 0);
  CHECK(run("balance " + tri) == 0);
  CHECK(run("census --count 3 --sides 5..7 --seed 2") == 0);
  CHECK(run("analyze " + tri + " --rho-window 1e-3:1e3 --tol-scale 2") == 0);
  CHECK(run("analyze " + tri + " --rho-window 5:1") != 0);
}
#endif
