#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "inscribed/boundary_limits.hpp"
#include "inscribed/census.hpp"
#include "inscribed/document.hpp"
#include "inscribed/genericity.hpp"
#include "inscribed/service.hpp"
#include "inscribed/svg.hpp"
#include "inscribed/triangle_loops.hpp"

using namespace inscribed;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kNotGeneric = 2;
constexpr int kTheorem = 3;
constexpr int kIo = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorKind::IoError, "cannot write " + path);
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotGeneric:
    case ErrorKind::EventCollision:
    case ErrorKind::PerturbationFailed: return kNotGeneric;
    case ErrorKind::TheoremViolation:
    case ErrorKind::MixedGracefulness:
    case ErrorKind::NonIntegerOrbit: return kTheorem;
    case ErrorKind::IoError:
    case ErrorKind::SchemaError:
    case ErrorKind::NotSimple:
    case ErrorKind::TooFewVertices:
    case ErrorKind::InvalidPolygon: return kIo;
    default: return 1;
  }
}

double default_tol_scale() {
  const char* env = std::getenv("INSCRIBED_TOL_SCALE");
  if (!env || !*env) return 1.0;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (*end || !(v > 0)) {
    std::cerr << "warning: ignoring INSCRIBED_TOL_SCALE=" << env << "\n";
    return 1.0;
  }
  return v;
}

Polygon load_polygon(const std::string& path) {
  PolygonDocument doc = parse_polygon(read_file(path));
  if (doc.reversed) std::cerr << "warning: " << path << " was clockwise; vertices reversed\n";
  return std::move(doc.polygon);
}

std::string genericity_json(const GenericityReport& g) {
  Json j;
  j["is_generic"] = g.is_generic;
  j["margin"] = g.margin;
  j["violations"] = Json::array();
  for (const Violation& v : g.violations)
    j["violations"].push_back(
        {{"kind", std::string(to_string(v.kind))}, {"edges", v.edges}, {"vertices", v.vertices}, {"severity", v.severity}});
  return j.dump(1);
}

// Messages for every theorem the analysis contradicts.
std::vector<std::string> theorem_failures(const Analysis& a) {
  std::vector<std::string> out;
  if (!a.parity.parity_ok) out.push_back("parity equation fails");
  if (a.parity.omega % 2 == 0) out.push_back("even number of squares");
  if (a.parity.graceful_square_count % 2 == 0) out.push_back("even number of graceful squares");
  for (int c = 0; c < static_cast<int>(a.components.size()); ++c)
    if (a.components[c].is_global() && a.components[c].gracefulness != CyclicOrder::Graceful)
      out.push_back("global component " + std::to_string(c) + " is not graceful");
  try {
    verify_no_ungraceful_elliptic(a);
  } catch (const Error& e) {
    out.push_back(e.what());
  }
  return out;
}

struct Window {
  double lo = 0, hi = 0;
};

Window parse_window(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw CLI::ValidationError("--rho-window", "expected lo:hi");
  Window w;
  try {
    w.lo = std::stod(text.substr(0, colon));
    w.hi = std::stod(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--rho-window", "expected lo:hi");
  }
  if (!(w.lo > 0 && w.hi > w.lo)) throw CLI::ValidationError("--rho-window", "need 0 < lo < hi");
  return w;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inscribed rectangles in polygons"};
  app.require_subcommand(1);

  TraceOptions trace;
  trace.tol_scale = default_tol_scale();

  std::string input, out_path, svg_path, window_text;
  auto* analyze_cmd = app.add_subcommand("analyze", "Trace and classify the inscribed rectangles of a polygon");
  analyze_cmd->add_option("polygon", input, "polygon document")->required();
  analyze_cmd->add_option("--out", out_path, "analysis document (default stdout)");
  analyze_cmd->add_option("--svg", svg_path, "render the analysis");
  analyze_cmd->add_option("--rho-window", window_text, "reporting window lo:hi");
  analyze_cmd->add_option("--tol-scale", trace.tol_scale, "tolerance scale")->check(CLI::PositiveNumber);

  CensusOptions census;
  std::string sides_text = "5..13";
  auto* census_cmd = app.add_subcommand("census", "Analyze seeded random generic polygons");
  census_cmd->add_option("--count", census.count)->check(CLI::PositiveNumber);
  census_cmd->add_option("--sides", sides_text, "vertex counts lo..hi");
  census_cmd->add_option("--seed", census.seed);
  census_cmd->add_option("--threads", census.threads);
  census_cmd->add_option("--out", out_path, "CSV (default stdout)");

  auto* generic_cmd = app.add_subcommand("check-generic", "Report genericity violations");
  generic_cmd->add_option("polygon", input)->required();

  double eps = 1e-3;
  std::uint64_t seed = 1;
  auto* perturb_cmd = app.add_subcommand("perturb", "Slide vertices until the polygon is generic");
  perturb_cmd->add_option("polygon", input)->required();
  perturb_cmd->add_option("--eps", eps)->check(CLI::PositiveNumber);
  perturb_cmd->add_option("--seed", seed);
  perturb_cmd->add_option("--out", out_path);

  std::string measure_path;
  auto* balance_cmd = app.add_subcommand("balance", "Find a rectangle splitting a boundary measure in halves");
  balance_cmd->add_option("polygon", input)->required();
  balance_cmd->add_option("--measure", measure_path, "measure document; arclength if omitted");

  int port = 8080;
  std::string host = "127.0.0.1";
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP analysis service");
  serve_cmd->add_option("--port", port)->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", host);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*analyze_cmd) {
      if (!window_text.empty()) {
        const Window w = parse_window(window_text);
        trace.rho_window_lo = w.lo;
        trace.rho_window_hi = w.hi;
      }
      const Polygon polygon = load_polygon(input);
      GenericityThresholds thr;
      thr.parallel *= trace.tol_scale;
      thr.concurrent *= trace.tol_scale;
      const GenericityReport generic = check_generic(polygon, thr);
      if (!generic.is_generic) {
        std::cerr << "polygon is not generic; try `inscribed perturb`\n" << genericity_json(generic) << "\n";
        return kNotGeneric;
      }
      const Analysis analysis = analyze(polygon, trace);
      MetadataRecord meta;
      meta.input_reversed = polygon.was_reversed();
      write_output(out_path, serialize(make_document(analysis, generic, meta)));
      if (!svg_path.empty()) write_output(svg_path, render_svg(analysis));
      const auto failures = theorem_failures(analysis);
      for (const std::string& f : failures) std::cerr << "theorem violation: " << f << "\n";
      return failures.empty() ? kOk : kTheorem;
    }

    if (*census_cmd) {
      const auto dots = sides_text.find("..");
      try {
        if (dots == std::string::npos) throw std::invalid_argument(sides_text);
        census.min_sides = std::stoi(sides_text.substr(0, dots));
        census.max_sides = std::stoi(sides_text.substr(dots + 2));
      } catch (const std::exception&) {
        std::cerr << "--sides expects lo..hi\n";
        return kIo;
      }
      census.trace = trace;
      const std::vector<CensusEntry> entries = run_census(census);
      write_output(out_path, census_csv(entries));
      int theorem = 0, failed = 0;
      for (const CensusEntry& e : entries) {
        if (e.error) {
          ++failed;
          if (exit_code(*e.error) == kTheorem) ++theorem;
          std::cerr << "polygon " << e.index << ": " << e.message << "\n";
        } else if (!e.theorems_hold()) {
          ++theorem;
          std::cerr << "polygon " << e.index << ": theorem violation\n";
        }
      }
      std::cerr << entries.size() - failed << "/" << entries.size() << " analyzed, " << theorem << " theorem violations\n";
      if (theorem) return kTheorem;
      return failed ? kNotGeneric : kOk;
    }

    if (*generic_cmd) {
      const GenericityReport g = check_generic(load_polygon(input));
      write_output("", genericity_json(g));
      return g.is_generic ? kOk : kNotGeneric;
    }

    if (*perturb_cmd) {
      const Polygon moved = slide_perturb(load_polygon(input), eps, seed);
      std::cerr << "hausdorff distance " << hausdorff_distance(load_polygon(input), moved) << "\n";
      write_output(out_path, serialize_polygon(moved));
      return kOk;
    }

    if (*balance_cmd) {
      const Polygon polygon = load_polygon(input);
      const BoundaryMeasure mu =
          measure_path.empty() ? BoundaryMeasure::arclength(polygon) : parse_measure(read_file(measure_path), polygon);
      const Analysis analysis = analyze(polygon, trace);
      const BalancedRectangle b = balanced_rectangle(analysis, mu);
      Json j = Json::parse(serialize(b.rectangle, 0.0));
      j.erase("u");
      j["component"] = b.component;
      j["boundary_t"] = b.boundary_t;
      j["arc_measures"] = b.arcs;
      write_output("", j.dump(1));
      return kOk;
    }

    if (*serve_cmd) {
      ServiceOptions options;
      options.trace = trace;
      Service service(options);
      const int bound = service.bind(host, port);
      if (bound < 0) {
        std::cerr << "cannot bind " << host << ":" << port << "\n";
        return kIo;
      }
      std::cerr << "listening on http://" << host << ":" << bound << "\n";
      return service.run() ? kOk : kIo;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code(e.kind());
  }
  return kOk;
}
