#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "inscribed/boundary_limits.hpp"
#include "inscribed/config_space.hpp"
#include "inscribed/genericity.hpp"
#include "inscribed/geom.hpp"

namespace inscribed {

inline constexpr int kSchemaVersion = 1;

struct PolygonDocument {
  Polygon polygon;
  bool reversed = false;  // input was clockwise
};

/// {"schema_version":1,"vertices":[[x,y],...]}.  Throws SchemaError,
/// NotSimple, TooFewVertices or InvalidPolygon.
PolygonDocument parse_polygon(std::string_view text);
std::string serialize_polygon(const Polygon& polygon);

/// {"schema_version":1,"edges":[{"weight":w,"density":[...]},...]} or
/// {"schema_version":1,"kind":"arclength"}.
BoundaryMeasure parse_measure(std::string_view text, const Polygon& polygon);

struct EndRecord {
  std::string kind;  // VertexCrossing, OppositePair or AdjacentPair
  int rect_vertex = -1;
  int polygon_vertex = -1;
  std::array<Point, 2> chord{};
};

struct SegmentRecord {
  std::array<int, 4> pattern{};
  double rho_lo = 0.0;
  double rho_hi = 0.0;  // +infinity is stored as null
  std::array<EndRecord, 2> ends;
};

struct StepRecord {
  int segment = 0;
  bool forward = true;
};

struct ComponentRecord {
  std::string topology;
  std::string cls;
  std::string gracefulness;
  int order = 4;
  int orbit = 0;
  int relabel_image = 0;
  int square_count_labeled = 0;
  std::vector<StepRecord> steps;
  std::optional<std::array<std::array<Point, 2>, 2>> end_chords;
  std::vector<double> square_parameters;
};

struct ViolationRecord {
  std::string kind;
  std::vector<int> edges;
  std::vector<int> vertices;
  double severity = 0.0;
};

struct GenericityRecord {
  bool is_generic = false;
  double margin = 0.0;
  std::vector<ViolationRecord> violations;
};

struct MetadataRecord {
  double tol_scale = 1.0;
  double event_tol = 0.0;
  double glue_tol = 0.0;
  double rho_window_lo = 0.0;
  double rho_window_hi = 0.0;
  std::optional<std::uint64_t> seed;
  bool input_reversed = false;
};

struct AnalysisDocument {
  int schema_version = kSchemaVersion;
  std::vector<Point> polygon;
  GenericityRecord genericity;
  std::vector<SegmentRecord> segments;
  std::vector<ComponentRecord> components;
  ParityReport parity;
  int labeled_square_count = 0;
  std::vector<Interval> coverage_gaps;
  MetadataRecord metadata;
};

/// Coverage gaps are those of the global components.
AnalysisDocument make_document(const Analysis& analysis, const GenericityReport& genericity,
                               const MetadataRecord& metadata = {});
std::string serialize(const AnalysisDocument& document);
/// Throws SchemaError.
AnalysisDocument parse_analysis(std::string_view text);

std::string serialize(const LabeledRectangle& rectangle, double u);

}  // namespace inscribed
