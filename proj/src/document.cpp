#include "inscribed/document.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

namespace inscribed {

using Json = nlohmann::ordered_json;

namespace {

std::string_view name_of(ComponentClass c) {
  switch (c) {
    case ComponentClass::Hyperbolic: return "Hyperbolic";
    case ComponentClass::Elliptic: return "Elliptic";
    case ComponentClass::OtherArc: return "OtherArc";
    case ComponentClass::OtherLoop: return "OtherLoop";
  }
  return "OtherArc";
}

std::string_view name_of(CyclicOrder c) {
  switch (c) {
    case CyclicOrder::Graceful: return "Graceful";
    case CyclicOrder::Ungraceful: return "Ungraceful";
    case CyclicOrder::Interlaced: return "Interlaced";
  }
  return "Interlaced";
}

[[noreturn]] void schema_error(const std::string& what) { throw Error(ErrorKind::SchemaError, what); }

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double number_or(const Json& j, double missing) {
  if (j.is_null()) return missing;
  if (!j.is_number()) schema_error("expected a number");
  return j.get<double>();
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) schema_error(std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) schema_error(std::string("missing field '") + key + "'");
  return *it;
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    schema_error(std::string("field '") + key + "': " + e.what());
  }
}

Json point_json(Point p) { return Json::array({p.x, p.y}); }

Point point_from(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    schema_error("a point is an array of two numbers");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json chord_json(const std::array<Point, 2>& c) { return Json::array({point_json(c[0]), point_json(c[1])}); }

std::array<Point, 2> chord_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) schema_error("a chord is an array of two points");
  return {point_from(j[0]), point_from(j[1])};
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    schema_error(e.what());
  }
}

void check_version(const Json& j) {
  const int v = get<int>(j, "schema_version");
  if (v != kSchemaVersion) schema_error("unsupported schema_version " + std::to_string(v));
}

}  // namespace

PolygonDocument parse_polygon(std::string_view text) {
  const Json j = parse_json(text);
  check_version(j);
  const Json& vs = field(j, "vertices");
  if (!vs.is_array()) schema_error("'vertices' must be an array");
  std::vector<Point> points;
  for (const Json& v : vs) points.push_back(point_from(v));
  Polygon polygon(std::move(points));
  const bool reversed = polygon.was_reversed();
  return {std::move(polygon), reversed};
}

std::string serialize_polygon(const Polygon& polygon) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["vertices"] = Json::array();
  for (const Point& p : polygon.vertices()) j["vertices"].push_back(point_json(p));
  return j.dump();
}

BoundaryMeasure parse_measure(std::string_view text, const Polygon& polygon) {
  const Json j = parse_json(text);
  check_version(j);
  if (j.contains("kind")) {
    if (get<std::string>(j, "kind") != "arclength") schema_error("unknown measure kind");
    return BoundaryMeasure::arclength(polygon);
  }
  const Json& edges = field(j, "edges");
  if (!edges.is_array() || static_cast<int>(edges.size()) != polygon.size())
    schema_error("'edges' must hold one record per polygon edge");
  std::vector<double> weights;
  std::vector<std::vector<double>> densities;
  for (const Json& e : edges) {
    weights.push_back(get<double>(e, "weight"));
    densities.push_back(e.contains("density") ? get<std::vector<double>>(e, "density") : std::vector<double>{});
  }
  try {
    return BoundaryMeasure::from_densities(std::move(weights), std::move(densities));
  } catch (const Error& e) {
    schema_error(e.what());
  }
}

AnalysisDocument make_document(const Analysis& analysis, const GenericityReport& genericity,
                               const MetadataRecord& metadata) {
  AnalysisDocument doc;
  doc.polygon = analysis.polygon.vertices();
  doc.genericity.is_generic = genericity.is_generic;
  doc.genericity.margin = genericity.margin;
  for (const Violation& v : genericity.violations)
    doc.genericity.violations.push_back({std::string(to_string(v.kind)), v.edges, v.vertices, v.severity});

  for (const Segment& s : analysis.segments) {
    SegmentRecord r;
    r.pattern = s.pattern.edges;
    r.rho_lo = s.rho_lo;
    r.rho_hi = s.rho_hi;
    for (int e = 0; e < 2; ++e) {
      EndRecord& end = r.ends[e];
      if (const auto* vc = std::get_if<VertexCrossing>(&s.ends[e])) {
        end.kind = "VertexCrossing";
        end.rect_vertex = vc->rect_vertex;
        end.polygon_vertex = vc->polygon_vertex;
      } else {
        const Chord& chord = std::get<DegenerateChord>(s.ends[e]).chord;
        end.kind = chord.kind == ChordKind::OppositePair ? "OppositePair" : "AdjacentPair";
        end.chord = chord.endpoints;
      }
    }
    doc.segments.push_back(r);
  }

  std::vector<int> global;
  for (int ci = 0; ci < static_cast<int>(analysis.components.size()); ++ci) {
    const Component& c = analysis.components[ci];
    if (c.is_global()) global.push_back(ci);
    ComponentRecord r;
    r.topology = c.topology == Topology::Arc ? "Arc" : "Loop";
    r.cls = name_of(c.cls);
    r.gracefulness = name_of(c.gracefulness);
    r.order = c.order;
    r.orbit = c.orbit;
    r.relabel_image = c.relabel_image;
    r.square_count_labeled = c.square_count_labeled;
    for (const ComponentStep& s : c.steps) r.steps.push_back({s.segment, s.forward});
    if (c.end_chords) r.end_chords = std::array<std::array<Point, 2>, 2>{(*c.end_chords)[0].endpoints, (*c.end_chords)[1].endpoints};
    r.square_parameters = analysis.square_parameters(ci);
    doc.components.push_back(std::move(r));
  }
  doc.parity = analysis.parity;
  doc.labeled_square_count = analysis.labeled_square_count;
  doc.coverage_gaps = coverage(analysis, global);
  doc.metadata = metadata;
  doc.metadata.tol_scale = analysis.options.tol_scale;
  doc.metadata.event_tol = analysis.options.event_tol;
  doc.metadata.glue_tol = analysis.options.glue_tol;
  doc.metadata.rho_window_lo = analysis.options.rho_window_lo;
  doc.metadata.rho_window_hi = analysis.options.rho_window_hi;
  return doc;
}

std::string serialize(const AnalysisDocument& doc) {
  Json j;
  j["schema_version"] = doc.schema_version;
  j["polygon"] = Json::array();
  for (const Point& p : doc.polygon) j["polygon"].push_back(point_json(p));

  Json g;
  g["is_generic"] = doc.genericity.is_generic;
  g["margin"] = number(doc.genericity.margin);
  g["violations"] = Json::array();
  for (const ViolationRecord& v : doc.genericity.violations)
    g["violations"].push_back({{"kind", v.kind}, {"edges", v.edges}, {"vertices", v.vertices}, {"severity", number(v.severity)}});
  j["genericity"] = std::move(g);

  j["segments"] = Json::array();
  for (const SegmentRecord& s : doc.segments) {
    Json r;
    r["pattern"] = s.pattern;
    r["rho_lo"] = number(s.rho_lo);
    r["rho_hi"] = number(s.rho_hi);
    r["ends"] = Json::array();
    for (const EndRecord& e : s.ends) {
      Json er{{"kind", e.kind}};
      if (e.kind == "VertexCrossing") {
        er["rect_vertex"] = e.rect_vertex;
        er["polygon_vertex"] = e.polygon_vertex;
      } else {
        er["chord"] = chord_json(e.chord);
      }
      r["ends"].push_back(std::move(er));
    }
    j["segments"].push_back(std::move(r));
  }

  j["components"] = Json::array();
  for (const ComponentRecord& c : doc.components) {
    Json r;
    r["topology"] = c.topology;
    r["class"] = c.cls;
    r["gracefulness"] = c.gracefulness;
    r["order"] = c.order;
    r["orbit"] = c.orbit;
    r["relabel_image"] = c.relabel_image;
    r["square_count_labeled"] = c.square_count_labeled;
    r["steps"] = Json::array();
    for (const StepRecord& s : c.steps) r["steps"].push_back({{"segment", s.segment}, {"forward", s.forward}});
    r["end_chords"] = c.end_chords ? Json::array({chord_json((*c.end_chords)[0]), chord_json((*c.end_chords)[1])}) : Json(nullptr);
    r["square_parameters"] = c.square_parameters;
    j["components"].push_back(std::move(r));
  }

  j["parity"] = {{"omega", doc.parity.omega},
                 {"omega_h", doc.parity.omega_h},
                 {"omega_e", doc.parity.omega_e},
                 {"parity_ok", doc.parity.parity_ok},
                 {"graceful_square_count", doc.parity.graceful_square_count},
                 {"labeled_square_count", doc.labeled_square_count}};
  j["coverage_gaps"] = Json::array();
  for (const Interval& iv : doc.coverage_gaps) j["coverage_gaps"].push_back(Json::array({iv.lo, iv.hi}));

  Json m;
  m["tol_scale"] = doc.metadata.tol_scale;
  m["event_tol"] = doc.metadata.event_tol;
  m["glue_tol"] = doc.metadata.glue_tol;
  m["rho_window"] = Json::array({doc.metadata.rho_window_lo, doc.metadata.rho_window_hi});
  m["seed"] = doc.metadata.seed ? Json(*doc.metadata.seed) : Json(nullptr);
  m["input_reversed"] = doc.metadata.input_reversed;
  j["metadata"] = std::move(m);
  return j.dump(1);
}

AnalysisDocument parse_analysis(std::string_view text) {
  const Json j = parse_json(text);
  check_version(j);
  AnalysisDocument doc;
  try {
    for (const Json& p : field(j, "polygon")) doc.polygon.push_back(point_from(p));

    const Json& g = field(j, "genericity");
    doc.genericity.is_generic = get<bool>(g, "is_generic");
    doc.genericity.margin = number_or(field(g, "margin"), std::numeric_limits<double>::infinity());
    for (const Json& v : field(g, "violations"))
      doc.genericity.violations.push_back({get<std::string>(v, "kind"), get<std::vector<int>>(v, "edges"),
                                           get<std::vector<int>>(v, "vertices"),
                                           number_or(field(v, "severity"), std::numeric_limits<double>::infinity())});

    for (const Json& s : field(j, "segments")) {
      SegmentRecord r;
      r.pattern = get<std::array<int, 4>>(s, "pattern");
      r.rho_lo = number_or(field(s, "rho_lo"), 0.0);
      r.rho_hi = number_or(field(s, "rho_hi"), std::numeric_limits<double>::infinity());
      const Json& ends = field(s, "ends");
      if (!ends.is_array() || ends.size() != 2) schema_error("a segment has two ends");
      for (int e = 0; e < 2; ++e) {
        EndRecord& er = r.ends[e];
        er.kind = get<std::string>(ends[e], "kind");
        if (er.kind == "VertexCrossing") {
          er.rect_vertex = get<int>(ends[e], "rect_vertex");
          er.polygon_vertex = get<int>(ends[e], "polygon_vertex");
        } else if (er.kind == "OppositePair" || er.kind == "AdjacentPair") {
          er.chord = chord_from(field(ends[e], "chord"));
        } else {
          schema_error("unknown end kind '" + er.kind + "'");
        }
      }
      doc.segments.push_back(r);
    }

    for (const Json& c : field(j, "components")) {
      ComponentRecord r;
      r.topology = get<std::string>(c, "topology");
      r.cls = get<std::string>(c, "class");
      r.gracefulness = get<std::string>(c, "gracefulness");
      r.order = get<int>(c, "order");
      r.orbit = get<int>(c, "orbit");
      r.relabel_image = get<int>(c, "relabel_image");
      r.square_count_labeled = get<int>(c, "square_count_labeled");
      for (const Json& s : field(c, "steps")) r.steps.push_back({get<int>(s, "segment"), get<bool>(s, "forward")});
      const Json& ec = field(c, "end_chords");
      if (!ec.is_null()) {
        if (!ec.is_array() || ec.size() != 2) schema_error("end_chords holds two chords");
        r.end_chords = std::array<std::array<Point, 2>, 2>{chord_from(ec[0]), chord_from(ec[1])};
      }
      r.square_parameters = get<std::vector<double>>(c, "square_parameters");
      doc.components.push_back(std::move(r));
    }

    const Json& p = field(j, "parity");
    doc.parity.omega = get<int>(p, "omega");
    doc.parity.omega_h = get<int>(p, "omega_h");
    doc.parity.omega_e = get<int>(p, "omega_e");
    doc.parity.parity_ok = get<bool>(p, "parity_ok");
    doc.parity.graceful_square_count = get<int>(p, "graceful_square_count");
    doc.labeled_square_count = get<int>(p, "labeled_square_count");

    for (const Json& iv : field(j, "coverage_gaps")) {
      if (!iv.is_array() || iv.size() != 2) schema_error("a gap is an array of two numbers");
      doc.coverage_gaps.push_back({iv[0].get<double>(), iv[1].get<double>()});
    }

    const Json& m = field(j, "metadata");
    doc.metadata.tol_scale = get<double>(m, "tol_scale");
    doc.metadata.event_tol = get<double>(m, "event_tol");
    doc.metadata.glue_tol = get<double>(m, "glue_tol");
    const auto window = get<std::array<double, 2>>(m, "rho_window");
    doc.metadata.rho_window_lo = window[0];
    doc.metadata.rho_window_hi = window[1];
    if (!field(m, "seed").is_null()) doc.metadata.seed = get<std::uint64_t>(m, "seed");
    doc.metadata.input_reversed = get<bool>(m, "input_reversed");
  } catch (const nlohmann::json::exception& e) {
    schema_error(e.what());
  }
  return doc;
}

std::string serialize(const LabeledRectangle& rectangle, double u) {
  Json j;
  j["u"] = u;
  j["rho"] = number(rectangle.aspect);
  j["vertices"] = Json::array();
  for (const Point& p : rectangle.vertices) j["vertices"].push_back(point_json(p));
  return j.dump();
}

}  // namespace inscribed
