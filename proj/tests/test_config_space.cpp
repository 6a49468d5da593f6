#include <doctest.h>

#include <algorithm>
#include <set>

#include "inscribed/census.hpp"
#include "inscribed/config_space.hpp"
#include "oracles.hpp"

using namespace inscribed;

namespace {

const Polygon& triangle() {
  static const Polygon p({{0, 0}, {1, 0}, {0.51, 0.87}});
  return p;
}

const Analysis& triangle_analysis() {
  static const Analysis a = analyze(triangle());
  return a;
}

const std::vector<CensusEntry>& small_census() {
  static const std::vector<CensusEntry> entries = [] {
    CensusOptions o;
    o.count = 12;
    o.seed = 404;
    o.keep_analyses = true;
    return run_census(o);
  }();
  return entries;
}

bool same_chord(const Chord& a, const Chord& b, double tol) {
  const auto& p = a.endpoints;
  const auto& q = b.endpoints;
  return (distance(p[0], q[0]) < tol && distance(p[1], q[1]) < tol) ||
         (distance(p[0], q[1]) < tol && distance(p[1], q[0]) < tol);
}

}  // namespace

TEST_CASE("quad patterns of a triangle") {
  const auto patterns = enumerate_quad_patterns(triangle());
  CHECK(patterns.size() == 36);
  CHECK(oracle::count_patterns_brute(3) == 36);
  std::set<QuadPattern> all(patterns.begin(), patterns.end());
  CHECK(all.size() == patterns.size());
  for (const QuadPattern& p : patterns) {
    CHECK(p.distinct_count() >= 3);
    CHECK(all.count(p.shifted()) == 1);
  }
}

TEST_CASE("quad patterns of a quadrilateral without parallel sides") {
  const Polygon q({{0, 0}, {2, 0.1}, {2.3, 1.7}, {-0.2, 1.2}});
  const auto patterns = enumerate_quad_patterns(q);
  int distinct4 = 0;
  for (const QuadPattern& p : patterns) distinct4 += p.distinct_count() == 4;
  CHECK(distinct4 == 24);
  std::set<QuadPattern> all(patterns.begin(), patterns.end());
  for (const QuadPattern& p : patterns) CHECK(all.count(p.shifted()) == 1);
}

TEST_CASE("base-edge family of the triangle matches the direct construction") {
  const auto segs = trace_segments(triangle(), QuadPattern{{0, 0, 1, 2}});
  REQUIRE(segs.size() == 1);
  const Segment& s = segs[0];
  CHECK(s.rho_lo == 0.0);
  CHECK(std::isinf(s.rho_hi));
  REQUIRE(std::holds_alternative<DegenerateChord>(s.ends[0]));
  REQUIRE(std::holds_alternative<DegenerateChord>(s.ends[1]));
  CHECK(std::get<DegenerateChord>(s.ends[0]).chord.kind == ChordKind::OppositePair);
  CHECK(std::get<DegenerateChord>(s.ends[1]).chord.kind == ChordKind::AdjacentPair);
  for (double rho : {0.01, 0.2, 1.0, 3.0, 50.0}) {
    // Base [a, b] on y = 0, top corners on the two slanted sides.
    const double h = rho / (1 + rho / 0.87);
    const double a = 0.51 / 0.87 * h, b = 1 - 0.49 / 0.87 * h;
    const std::array<Point, 4> expected{Point{a, 0}, Point{b, 0}, Point{b, h}, Point{a, h}};
    const LabeledRectangle r = s.rectangle_at(rho);
    for (int k = 0; k < 4; ++k) CHECK(distance(r.vertices[k], expected[k]) < 1e-12);
  }
}

TEST_CASE("a pattern with no inscribed positions has no segments") {
  const Polygon p({{0, 0}, {4, 0}, {4.2, 0.3}, {0.1, 0.4}});
  int empty = 0;
  for (const QuadPattern& pat : enumerate_quad_patterns(p)) empty += trace_segments(p, pat).empty();
  CHECK(empty > 0);
}

TEST_CASE("segments of shifted patterns correspond under rho -> 1/rho") {
  for (const CensusEntry& e : small_census()) {
    REQUIRE(e.analysis);
    const Analysis& a = *e.analysis;
    for (int i = 0; i < static_cast<int>(a.segments.size()); ++i) {
      const Segment& s = a.segments[i];
      const Segment& t = a.segments[a.segment_relabel[i]];
      CHECK(t.pattern == s.pattern.shifted());
      const double lo = std::isinf(s.rho_hi) ? 0.0 : 1.0 / s.rho_hi;
      const double hi = s.rho_lo == 0.0 ? INFINITY : 1.0 / s.rho_lo;
      if (lo == 0.0)
        CHECK(t.rho_lo == 0.0);
      else
        CHECK(t.rho_lo == doctest::Approx(lo).epsilon(1e-9));
      if (std::isinf(hi))
        CHECK(std::isinf(t.rho_hi));
      else
        CHECK(t.rho_hi == doctest::Approx(hi).epsilon(1e-9));
    }
  }
}

TEST_CASE("near-equilateral triangle has three hyperbolic components") {
  const Analysis& a = triangle_analysis();
  const std::vector<int> reps = a.orbit_representatives();
  CHECK(reps.size() == 3);
  for (int c : reps) {
    const Component& comp = a.components[c];
    CHECK(comp.topology == Topology::Arc);
    CHECK(comp.cls == ComponentClass::Hyperbolic);
    CHECK(comp.gracefulness == CyclicOrder::Graceful);
    CHECK(comp.order == 4);
    CHECK(comp.square_count_labeled % 2 == 1);
    REQUIRE(comp.end_chords);
    const auto& ch = *comp.end_chords;
    CHECK_FALSE(same_chord(ch[0], ch[1], 1e-9));
    CHECK(ch[0].kind != ch[1].kind);
  }
  CHECK(a.parity.omega == 3);
  CHECK(a.parity.omega_h == 3);
  CHECK(a.parity.omega_e == 0);
  CHECK(a.parity.parity_ok);
  CHECK(oracle::count_squares_diagonal(triangle().vertices()) == 3);
}

TEST_CASE("relabeling permutes components with orbits of size 1, 2 or 4") {
  std::vector<const Analysis*> all{&triangle_analysis()};
  for (const CensusEntry& e : small_census()) all.push_back(&*e.analysis);
  for (const Analysis* a : all) {
    const int m = static_cast<int>(a->components.size());
    std::vector<int> seen(m, 0);
    for (int c = 0; c < m; ++c) {
      const int img = a->components[c].relabel_image;
      REQUIRE(img >= 0);
      REQUIRE(img < m);
      ++seen[img];
      int x = c, steps = 0;
      do {
        x = a->components[x].relabel_image;
        ++steps;
      } while (x != c && steps < 8);
      CHECK(steps == a->components[c].order);
      CHECK((steps == 1 || steps == 2 || steps == 4));
      if (a->components[c].topology == Topology::Arc) CHECK(a->components[c].order == 4);
    }
    for (int s : seen) CHECK(s == 1);
  }
}

TEST_CASE("component invariants across a census") {
  for (const CensusEntry& e : small_census()) {
    REQUIRE(e.analysis);
    const Analysis& a = *e.analysis;
    CHECK(a.parity.parity_ok);
    CHECK(a.parity.omega % 2 == 1);
    CHECK(a.parity.graceful_square_count % 2 == 1);
    CHECK(a.labeled_square_count == 4 * a.parity.omega);
    for (const Component& c : a.components) {
      if (c.topology == Topology::Arc) {
        REQUIRE(c.end_chords);
        CHECK_FALSE(same_chord((*c.end_chords)[0], (*c.end_chords)[1], 1e-9));
        CHECK((c.cls == ComponentClass::Hyperbolic) == ((*c.end_chords)[0].kind != (*c.end_chords)[1].kind));
        if (c.cls == ComponentClass::Hyperbolic) CHECK(c.square_count_labeled % 2 == 1);
      } else {
        CHECK_FALSE(c.end_chords);
        if (c.cls == ComponentClass::OtherLoop) CHECK(c.square_count_labeled % 2 == 0);
      }
      if (c.is_global()) CHECK(c.gracefulness == CyclicOrder::Graceful);
    }
  }
}

TEST_CASE("every segment rectangle is inscribed") {
  const CensusEntry& e = small_census().front();
  const Analysis& a = *e.analysis;
  for (const Segment& s : a.segments) {
    const double rho = s.interior_rho();
    const LabeledRectangle r = s.rectangle_at(rho);
    CHECK(r.relation_residual() < 1e-9);
    for (const Point& p : r.vertices) CHECK(a.polygon.distance_to_boundary(p) < 1e-9 * a.polygon.diameter());
  }
}

TEST_CASE("coverage of a single rectangle has four gaps") {
  const Analysis& a = triangle_analysis();
  const LabeledRectangle r = a.sample(a.orbit_representatives()[0], 0.5);
  CHECK(coverage(r, a.polygon).size() == 4);
}

TEST_CASE("uncovered intervals wrap around zero") {
  const auto gaps = uncovered_intervals({{0.5, 1.0}, {2.0, 2.5}}, 3);
  REQUIRE(gaps.size() == 2);
  CHECK(gaps[0].lo == doctest::Approx(1.0));
  CHECK(gaps[0].hi == doctest::Approx(2.0));
  CHECK(gaps[1].lo == doctest::Approx(2.5));
  CHECK(gaps[1].hi == doctest::Approx(3.5));
  CHECK(uncovered_intervals({{0.0, 3.0}}, 3).empty());
}

TEST_CASE("lifting a constant path gives zero windings") {
  const std::vector<std::array<double, 4>> constant(10, {0.2, 1.1, 1.9, 2.7});
  const LiftReport r = lift_vertex_paths(constant, 3);
  for (long w : r.windings) CHECK(w == 0);
  CHECK(r.ineq_ok);
  CHECK(r.shift == 0);
  const std::vector<std::array<double, 4>> jumpy{{0.1, 1, 2, 2.5}, {0.9, 1, 2, 2.5}};
  CHECK_THROWS_AS(lift_vertex_paths(jumpy, 3), Error);
}

TEST_CASE("lifted loops of a census") {
  for (const CensusEntry& e : small_census()) {
    const Analysis& a = *e.analysis;
    for (int c = 0; c < static_cast<int>(a.components.size()); ++c) {
      if (a.components[c].topology != Topology::Loop) continue;
      const LiftReport r = lift_loop_vertices(a, c);
      for (double d : r.displacement) CHECK(std::abs(d - std::round(d / a.polygon.size()) * a.polygon.size()) < 1e-6);
    }
  }
}

TEST_CASE("morse type of chords") {
  const Polygon hex({{1, 0}, {0.5, 0.9}, {-0.5, 0.85}, {-1.05, 0}, {-0.5, -0.88}, {0.52, -0.86}});
  const Chord diameter{{Point{1, 0}, Point{-1.05, 0}}, ChordKind::OppositePair};
  CHECK(chord_morse_index(diameter, hex) == MorseType::Extremum);
  const Chord base{{Point{0, 0}, Point{1, 0}}, ChordKind::OppositePair};
  CHECK(chord_morse_index(base, triangle()) == MorseType::Extremum);
  const Chord altitude{{Point{0.51, 0}, Point{0.51, 0.87}}, ChordKind::AdjacentPair};
  CHECK(chord_morse_index(altitude, triangle()) == MorseType::Saddle);
}
