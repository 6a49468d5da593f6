#pragma once

#include <array>
#include <compare>
#include <optional>
#include <variant>
#include <vector>

#include "inscribed/four_lines.hpp"
#include "inscribed/geom.hpp"

namespace inscribed {

/// Edges of the polygon carrying R0..R3, in rectangle-label order.
struct QuadPattern {
  std::array<int, 4> edges{};

  int distinct_count() const;
  /// (e_k, e_{k+1}, e_{k+2}, e_{k+3}); the pattern of the relabeled rectangles.
  QuadPattern shifted(int k = 1) const;
  auto operator<=>(const QuadPattern&) const = default;
};

enum class ChordKind { AdjacentPair, OppositePair };

struct Chord {
  std::array<Point, 2> endpoints;
  ChordKind kind = ChordKind::OppositePair;
};

/// R_{rect_vertex} reaches polygon vertex `polygon_vertex` and passes to the
/// neighbouring edge.
struct VertexCrossing {
  int rect_vertex = 0;
  int polygon_vertex = 0;
};

/// rho -> 0 (OppositePair) or rho -> infinity (AdjacentPair).
struct DegenerateChord {
  Chord chord;
};

using EndpointEvent = std::variant<VertexCrossing, DegenerateChord>;

struct TraceOptions {
  double tol_scale = 1.0;
  double event_tol = 1e-10;   // relative separation of events in rho
  double glue_tol = 1e-7;     // rectangle match, relative to the diameter
  double rho_window_lo = 1e-4;
  double rho_window_hi = 1e4;
};

/// A maximal rho-interval of one pattern on which every R_k stays on its
/// closed edge.  rho_lo may be 0 and rho_hi may be +infinity.
struct Segment {
  QuadPattern pattern;
  double rho_lo = 0.0;
  double rho_hi = 0.0;
  std::array<EndpointEvent, 2> ends;
  RatioFamily family;
  std::array<double, 4> edge_length{};

  double edge_fraction(int k, double rho) const { return family.parameter_at(k, rho) / edge_length[k]; }
  std::array<double, 4> boundary_t(double rho) const;
  LabeledRectangle rectangle_at(double rho) const { return family.rectangle_at(rho); }
  /// Rectangle at an end; the limit configuration at rho = 0 or infinity.
  LabeledRectangle end_rectangle(int end) const;
  std::array<double, 4> end_boundary_t(int end) const;
  double end_rho(int end) const { return end == 0 ? rho_lo : rho_hi; }
  bool contains_rho(double rho) const { return rho > rho_lo && rho < rho_hi; }
  /// Strictly interior rho used to take a representative sample.
  double interior_rho() const;
};

/// Genericity failure met while tracing one pattern.
struct TraceIssue {
  enum class Kind { EventCollision, SquareAtVertex };
  Kind kind = Kind::EventCollision;
  QuadPattern pattern;
  double rho = 0.0;
  std::vector<int> rect_vertices;
  std::vector<int> polygon_vertices;
};

std::vector<QuadPattern> enumerate_quad_patterns(const Polygon& polygon, const TraceOptions& options = {});
LineQuad pattern_quad(const Polygon& polygon, const QuadPattern& pattern, const TraceOptions& options = {});
/// Throws EventCollision or NotGeneric, unless `issues` is given; then the
/// failures are recorded and tracing continues with the first event.
std::vector<Segment> trace_segments(const Polygon& polygon, const QuadPattern& pattern, const TraceOptions& options = {},
                                    std::vector<TraceIssue>* issues = nullptr);

enum class Topology { Arc, Loop };
enum class ComponentClass { Hyperbolic, Elliptic, OtherArc, OtherLoop };

struct ComponentStep {
  int segment = 0;
  bool forward = true;  // traversed with rho increasing
};

struct Component {
  std::vector<ComponentStep> steps;
  Topology topology = Topology::Arc;
  std::optional<std::array<Chord, 2>> end_chords;
  ComponentClass cls = ComponentClass::OtherArc;
  CyclicOrder gracefulness = CyclicOrder::Graceful;
  int order = 4;
  int orbit = 0;
  int relabel_image = 0;
  int square_count_labeled = 0;

  bool is_global() const { return cls == ComponentClass::Hyperbolic || cls == ComponentClass::Elliptic; }
};

struct ParityReport {
  int omega = 0;
  int omega_h = 0;
  int omega_e = 0;
  bool parity_ok = false;
  int graceful_square_count = 0;
};

struct Analysis {
  Polygon polygon;
  TraceOptions options;
  std::vector<Segment> segments;
  std::vector<Component> components;
  std::vector<int> segment_relabel;  // index of the relabeled segment
  int labeled_square_count = 0;
  ParityReport parity;

  /// Rectangle at global parameter u in [0,1] along a component; each step
  /// takes an equal share and is swept in log rho inside the reporting window.
  LabeledRectangle sample(int component, double u) const;
  double rho_at(int component, double u) const;
  /// Global parameters of the squares on a component.
  std::vector<double> square_parameters(int component) const;
  /// Representative component of each orbit, in increasing index.
  std::vector<int> orbit_representatives() const;
};

/// Components from the segments of every pattern, glued at vertex crossings.
std::vector<Component> assemble_components(const Polygon& polygon, const std::vector<Segment>& segments,
                                           const TraceOptions& options = {});
/// Index of the segment carrying the relabeled rectangles of each segment.
std::vector<int> relabel_segments(const std::vector<Segment>& segments);
/// Fills class, gracefulness, order and squares.  Needs every component so
/// the relabel orbit can be followed.
void classify_components(const Polygon& polygon, const std::vector<Segment>& segments,
                         std::vector<Component>& components, const TraceOptions& options = {});
ParityReport parity_report(const Analysis& analysis);

Analysis analyze(const Polygon& polygon, const TraceOptions& options = {});

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

/// Complement in R/NZ of a union of closed covered intervals, as maximal
/// open gaps sorted by decreasing length.  A gap crossing t = 0 has hi > N.
std::vector<Interval> uncovered_intervals(std::vector<Interval> covered, int edge_count, double merge_tol = 1e-9);
/// Boundary coordinates reached by some vertex of the given components.
std::vector<Interval> covered_intervals(const Analysis& analysis, const std::vector<int>& components);
std::vector<Interval> coverage(const Analysis& analysis, const std::vector<int>& components);
std::vector<Interval> coverage(const LabeledRectangle& rectangle, const Polygon& polygon);

struct LiftReport {
  std::array<double, 4> displacement{};  // lifted end minus start, edge units
  std::array<long, 4> windings{};        // displacement / N, rounded
  bool ineq_ok = false;
  int shift = 0;
  int samples = 0;
};

/// Boundary coordinates of R0..R3 along a component traversal, refined until
/// no vertex moves max_step edge units between samples.
std::vector<std::array<double, 4>> component_boundary_samples(const Analysis& analysis, int component,
                                                              double max_step = 0.2, int per_segment = 64);
std::vector<LabeledRectangle> component_rectangles(const Analysis& analysis, int component,
                                                   double max_step = 0.2, int per_segment = 64);
LiftReport lift_vertex_paths(const std::vector<std::array<double, 4>>& samples, int edge_count);
LiftReport lift_loop_vertices(const Analysis& analysis, int component);

enum class MorseType { Saddle, Extremum, Degenerate };
MorseType chord_morse_index(const Chord& chord, const Polygon& polygon);

}  // namespace inscribed
