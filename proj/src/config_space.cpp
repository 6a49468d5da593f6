#include "inscribed/config_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace inscribed {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRootFloor = 1e-12;
constexpr double kRootCeiling = 1e12;

double wrap_delta(double d, int n) {
  d = std::fmod(d, static_cast<double>(n));
  if (d >= 0.5 * n) d -= n;
  if (d < -0.5 * n) d += n;
  return d;
}

bool same_rho(double a, double b) {
  if (a == b) return true;
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  return std::abs(a - b) <= 1e-8 * std::max(std::abs(a), std::abs(b));
}

double effective_lo(const Segment& s, const TraceOptions& o) {
  if (s.rho_lo > 0) return s.rho_lo;
  return std::isfinite(s.rho_hi) ? std::min(o.rho_window_lo, 1e-2 * s.rho_hi) : o.rho_window_lo;
}

double effective_hi(const Segment& s, const TraceOptions& o) {
  if (std::isfinite(s.rho_hi)) return s.rho_hi;
  return s.rho_lo > 0 ? std::max(o.rho_window_hi, 1e2 * s.rho_lo) : o.rho_window_hi;
}

// rho at fraction v of a step, swept in log rho along the traversal direction.
double step_rho(const Segment& s, bool forward, double v, const TraceOptions& o) {
  const double a = std::log(effective_lo(s, o)), b = std::log(effective_hi(s, o));
  if (!forward) v = 1.0 - v;
  return std::exp(a + v * (b - a));
}

int entry_end(const ComponentStep& step) { return step.forward ? 0 : 1; }
int exit_end(const ComponentStep& step) { return step.forward ? 1 : 0; }

}  // namespace

int QuadPattern::distinct_count() const {
  std::set<int> s(edges.begin(), edges.end());
  return static_cast<int>(s.size());
}

QuadPattern QuadPattern::shifted(int k) const {
  QuadPattern out;
  for (int i = 0; i < 4; ++i) out.edges[i] = edges[((i + k) % 4 + 4) % 4];
  return out;
}

std::array<double, 4> Segment::boundary_t(double rho) const {
  std::array<double, 4> t{};
  for (int k = 0; k < 4; ++k) t[k] = pattern.edges[k] + std::clamp(edge_fraction(k, rho), 0.0, 1.0);
  return t;
}

LabeledRectangle Segment::end_rectangle(int end) const {
  const double rho = end_rho(end);
  if (rho > 0 && std::isfinite(rho)) return rectangle_at(rho);
  LabeledRectangle r;
  r.aspect = rho;
  for (int k = 0; k < 4; ++k) {
    const RationalFunction& f = family.parameter[k];
    double t = rho == 0 ? f.limit_at_zero() : f.limit_at_infinity();
    if (!std::isfinite(t)) t = f(rho == 0 ? kRootFloor : kRootCeiling);
    r.vertices[k] = family.quad.line(k).at(t);
  }
  return r;
}

std::array<double, 4> Segment::end_boundary_t(int end) const {
  const double rho = end_rho(end);
  if (rho > 0 && std::isfinite(rho)) return boundary_t(rho);
  const LabeledRectangle r = end_rectangle(end);
  std::array<double, 4> t{};
  for (int k = 0; k < 4; ++k) {
    const double s = family.quad.line(k).parameter_of(r.vertices[k]) / edge_length[k];
    t[k] = pattern.edges[k] + std::clamp(s, 0.0, 1.0);
  }
  return t;
}

double Segment::interior_rho() const {
  const bool lo0 = rho_lo <= 0, hi_inf = !std::isfinite(rho_hi);
  if (lo0 && hi_inf) return 1.0;
  if (lo0) return 0.5 * rho_hi;
  if (hi_inf) return 2.0 * rho_lo;
  return std::sqrt(rho_lo * rho_hi);
}

LineQuad pattern_quad(const Polygon& polygon, const QuadPattern& pattern, const TraceOptions& options) {
  std::array<DirectedLine, 4> lines;
  for (int k = 0; k < 4; ++k) lines[k] = polygon.edge_line(pattern.edges[k]);
  QuadTolerance tol;
  tol.parallel *= options.tol_scale;
  tol.concurrent *= options.tol_scale;
  tol.scale = polygon.diameter();
  try {
    return LineQuad::make(lines, tol);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InvalidQuad) throw;
    throw Error(ErrorKind::NotGeneric, std::string("associated quad (") + std::to_string(pattern.edges[0]) + "," +
                                           std::to_string(pattern.edges[1]) + "," + std::to_string(pattern.edges[2]) +
                                           "," + std::to_string(pattern.edges[3]) + ") is not in general position");
  }
}

std::vector<QuadPattern> enumerate_quad_patterns(const Polygon& polygon, const TraceOptions& options) {
  const int n = polygon.size();
  std::vector<QuadPattern> out;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          QuadPattern p{{a, b, c, d}};
          if (p.distinct_count() < 3) continue;
          pattern_quad(polygon, p, options);
          out.push_back(p);
        }
  return out;
}

std::vector<Segment> trace_segments(const Polygon& polygon, const QuadPattern& pattern, const TraceOptions& options,
                                    std::vector<TraceIssue>* issues) {
  Segment proto;
  proto.pattern = pattern;
  proto.family = family_coefficients(pattern_quad(polygon, pattern, options));
  for (int k = 0; k < 4; ++k) proto.edge_length[k] = polygon.edge_length(pattern.edges[k]);

  struct Event {
    double rho;
    int k;     // rectangle vertex, or -1 for an excluded ratio
    int side;  // 0: s_k = 0, 1: s_k = 1
  };
  std::vector<Event> events;
  // Boundary polynomials: s_k = side  <=>  bound[k][side](rho) = 0.  When two
  // consecutive edges meet in the degenerate limit, the vertex tends to their
  // common polygon vertex and the matching coefficient vanishes exactly.
  std::array<std::array<Polynomial, 2>, 4> bound;
  for (int k = 0; k < 4; ++k) {
    const RationalFunction& f = proto.family.parameter[k];
    const double cut = 1e-13 * std::max(f.num.max_abs_coefficient(), proto.edge_length[k] * f.den.max_abs_coefficient());
    bound[k][0] = f.num.truncated(cut);
    bound[k][1] = (f.num - proto.edge_length[k] * f.den).truncated(cut);
  }
  const auto force = [&](int k, int side, bool at_infinity) {
    const Polynomial den = proto.family.parameter[k].den.cleaned();
    int coefficient = den.degree();
    if (!at_infinity)
      for (coefficient = 0; coefficient < den.degree() && den.coefficient(coefficient) == 0.0;) ++coefficient;
    std::vector<double> c = bound[k][side].coefficients();
    if (coefficient < static_cast<int>(c.size())) c[coefficient] = 0.0;
    bound[k][side] = Polynomial(std::move(c)).cleaned(0.0);
  };
  const auto meet = [&](int a, int b, bool at_infinity) {
    // R_a and R_b both tend to the crossing of their lines.
    const int ea = pattern.edges[a], eb = pattern.edges[b];
    if (polygon.wrap(ea + 1) == eb) {
      force(a, 1, at_infinity);
      force(b, 0, at_infinity);
    } else if (polygon.wrap(eb + 1) == ea) {
      force(a, 0, at_infinity);
      force(b, 1, at_infinity);
    }
  };
  meet(0, 3, false);
  meet(1, 2, false);
  meet(2, 3, true);
  meet(0, 1, true);

  const auto add_roots = [&](const Polynomial& p, int k, int side) {
    for (double r : real_roots(p))
      if (r >= kRootFloor && r <= kRootCeiling) events.push_back({r, k, side});
  };
  for (int k = 0; k < 4; ++k) {
    add_roots(bound[k][0], k, 0);
    add_roots(bound[k][1], k, 1);
    add_roots(proto.family.parameter[k].den.cleaned(), -1, 0);
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.rho < b.rho; });

  // Events closer than the tolerance form one breakpoint.
  const double tol = options.event_tol * options.tol_scale;
  std::vector<std::vector<Event>> clusters;
  for (const Event& e : events) {
    if (!clusters.empty() && e.rho - clusters.back().back().rho <= tol * e.rho)
      clusters.back().push_back(e);
    else
      clusters.push_back({e});
  }

  const auto inside = [&](double rho) {
    for (int k = 0; k < 4; ++k) {
      const double d = proto.family.parameter[k].den(rho);
      if (bound[k][0](rho) * d < 0.0 || bound[k][1](rho) * d > 0.0) return false;
    }
    return true;
  };

  const std::size_t m = clusters.size();
  std::vector<double> breaks(m);
  std::vector<bool> has_pole(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    breaks[i] = clusters[i].front().rho;
    for (const Event& e : clusters[i])
      if (e.k < 0) has_pole[i] = true;
  }
  // m + 1 open intervals between consecutive breakpoints.
  std::vector<bool> in(m + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    double probe;
    if (m == 0) probe = 1.0;
    else if (i == 0) probe = 0.5 * breaks[0];
    else if (i == m) probe = 2.0 * breaks[m - 1] + 1.0;
    else probe = 0.5 * (breaks[i - 1] + breaks[i]);
    in[i] = inside(probe);
  }

  const auto end_event = [&](std::size_t cluster) -> EndpointEvent {
    if (has_pole[cluster]) {
      const bool removable = std::any_of(clusters[cluster].begin(), clusters[cluster].end(), [](const Event& e) { return e.k >= 0; });
      if (removable)
        throw Error(ErrorKind::NotGeneric, "one-parameter family of inscribed rectangles at rho = " +
                                               std::to_string(breaks[cluster]));
      throw Error(ErrorKind::DegenerateConfiguration, "inscribed family reaches an excluded ratio");
    }
    std::set<std::pair<int, int>> hits;
    for (const Event& e : clusters[cluster]) hits.insert({e.k, e.side});
    const auto [k, side] = *hits.begin();
    const VertexCrossing crossing{k, polygon.wrap(pattern.edges[k] + side)};
    if (std::abs(breaks[cluster] - 1.0) < 1e-9) {
      if (!issues) throw Error(ErrorKind::NotGeneric, "inscribed square with a vertex at a polygon vertex");
      issues->push_back({TraceIssue::Kind::SquareAtVertex, pattern, breaks[cluster], {k}, {crossing.polygon_vertex}});
    }
    if (hits.size() > 1) {
      if (!issues)
        throw Error(ErrorKind::EventCollision, "two vertex events coincide at rho = " + std::to_string(breaks[cluster]));
      TraceIssue issue{TraceIssue::Kind::EventCollision, pattern, breaks[cluster], {}, {}};
      for (const auto& [hk, hs] : hits) {
        issue.rect_vertices.push_back(hk);
        issue.polygon_vertices.push_back(polygon.wrap(pattern.edges[hk] + hs));
      }
      issues->push_back(std::move(issue));
    }
    return crossing;
  };

  std::vector<Segment> out;
  std::size_t i = 0;
  while (i <= m) {
    if (!in[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < m && in[j + 1] && !has_pole[j]) ++j;
    Segment seg = proto;
    seg.rho_lo = i == 0 ? 0.0 : breaks[i - 1];
    seg.rho_hi = j == m ? kInf : breaks[j];
    if (i == 0) {
      const LabeledRectangle r = seg.end_rectangle(0);
      seg.ends[0] = DegenerateChord{Chord{{r.vertices[0], r.vertices[1]}, ChordKind::OppositePair}};
    } else {
      seg.ends[0] = end_event(i - 1);
    }
    if (j == m) {
      const LabeledRectangle r = seg.end_rectangle(1);
      seg.ends[1] = DegenerateChord{Chord{{r.vertices[1], r.vertices[2]}, ChordKind::AdjacentPair}};
    } else {
      seg.ends[1] = end_event(j);
    }
    out.push_back(std::move(seg));
    i = j + 1;
  }
  return out;
}

std::vector<Component> assemble_components(const Polygon& polygon, const std::vector<Segment>& segments,
                                           const TraceOptions& options) {
  std::map<QuadPattern, std::vector<int>> by_pattern;
  for (int i = 0; i < static_cast<int>(segments.size()); ++i) by_pattern[segments[i].pattern].push_back(i);

  const double glue = options.glue_tol * options.tol_scale * polygon.diameter();
  const int count = static_cast<int>(segments.size());
  std::vector<std::array<std::pair<int, int>, 2>> partner(count, {{{-1, -1}, {-1, -1}}});
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < 2; ++j) {
      const auto* vc = std::get_if<VertexCrossing>(&segments[i].ends[j]);
      if (!vc) continue;
      QuadPattern other = segments[i].pattern;
      const int e = other.edges[vc->rect_vertex];
      other.edges[vc->rect_vertex] = vc->polygon_vertex == e ? polygon.wrap(e - 1) : polygon.wrap(e + 1);
      const LabeledRectangle here = segments[i].end_rectangle(j);
      std::vector<std::pair<int, int>> matches;
      if (auto it = by_pattern.find(other); it != by_pattern.end()) {
        for (int i2 : it->second)
          for (int j2 = 0; j2 < 2; ++j2) {
            const auto* vc2 = std::get_if<VertexCrossing>(&segments[i2].ends[j2]);
            if (!vc2 || vc2->rect_vertex != vc->rect_vertex || vc2->polygon_vertex != vc->polygon_vertex) continue;
            if (configuration_distance(here, segments[i2].end_rectangle(j2)) <= glue) matches.push_back({i2, j2});
          }
      }
      if (matches.empty())
        throw Error(ErrorKind::UnmatchedCrossing,
                    "no partner for the crossing of R" + std::to_string(vc->rect_vertex) + " at vertex " +
                        std::to_string(vc->polygon_vertex));
      if (matches.size() > 1)
        throw Error(ErrorKind::BranchPoint, "crossing at vertex " + std::to_string(vc->polygon_vertex) +
                                                " has " + std::to_string(matches.size()) + " partners");
      partner[i][j] = matches.front();
    }
  }
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < 2; ++j) {
      const auto [i2, j2] = partner[i][j];
      if (i2 >= 0 && partner[i2][j2] != std::pair{i, j})
        throw Error(ErrorKind::BranchPoint, "asymmetric gluing between segments");
    }

  std::vector<bool> used(count, false);
  std::vector<Component> components;
  for (int start = 0; start < count; ++start) {
    if (used[start]) continue;
    // Walk backwards to a chord end, or around a loop back to start.
    int seg = start, end = 0;
    bool loop = false;
    for (int guard = 0; guard <= count; ++guard) {
      const auto [s2, e2] = partner[seg][end];
      if (s2 < 0) break;
      seg = s2;
      end = 1 - e2;
      if (seg == start) {
        loop = true;
        break;
      }
    }
    Component c;
    c.topology = loop ? Topology::Loop : Topology::Arc;
    int cur = loop ? start : seg;
    int enter = loop ? 0 : end;
    for (int guard = 0; guard <= count; ++guard) {
      if (used[cur]) throw Error(ErrorKind::BranchPoint, "segment visited twice while assembling");
      used[cur] = true;
      c.steps.push_back({cur, enter == 0});
      const int leave = 1 - enter;
      const auto [s2, e2] = partner[cur][leave];
      if (s2 < 0) break;
      if (loop && s2 == start) break;
      cur = s2;
      enter = e2;
    }
    if (c.topology == Topology::Arc) {
      const auto& first = std::get<DegenerateChord>(segments[c.steps.front().segment].ends[entry_end(c.steps.front())]);
      const auto& last = std::get<DegenerateChord>(segments[c.steps.back().segment].ends[exit_end(c.steps.back())]);
      c.end_chords = std::array<Chord, 2>{first.chord, last.chord};
      if (first.chord.kind == ChordKind::AdjacentPair && last.chord.kind == ChordKind::OppositePair) {
        std::reverse(c.steps.begin(), c.steps.end());
        for (auto& s : c.steps) s.forward = !s.forward;
        c.end_chords = std::array<Chord, 2>{last.chord, first.chord};
      }
    }
    components.push_back(std::move(c));
  }
  return components;
}

std::vector<int> relabel_segments(const std::vector<Segment>& segments) {
  std::map<QuadPattern, std::vector<int>> by_pattern;
  for (int i = 0; i < static_cast<int>(segments.size()); ++i) by_pattern[segments[i].pattern].push_back(i);
  std::vector<int> image(segments.size(), -1);
  for (int i = 0; i < static_cast<int>(segments.size()); ++i) {
    const Segment& s = segments[i];
    const double lo = std::isfinite(s.rho_hi) ? 1.0 / s.rho_hi : 0.0;
    const double hi = s.rho_lo > 0 ? 1.0 / s.rho_lo : kInf;
    auto it = by_pattern.find(s.pattern.shifted(1));
    if (it != by_pattern.end())
      for (int i2 : it->second)
        if (same_rho(segments[i2].rho_lo, lo) && same_rho(segments[i2].rho_hi, hi)) image[i] = i2;
    if (image[i] < 0) throw Error(ErrorKind::DegenerateConfiguration, "segment has no relabeled counterpart");
  }
  return image;
}

void classify_components(const Polygon& polygon, const std::vector<Segment>& segments,
                         std::vector<Component>& components, const TraceOptions& options) {
  (void)options;
  const std::vector<int> relabel = relabel_segments(segments);
  std::vector<int> owner(segments.size(), -1);
  for (int c = 0; c < static_cast<int>(components.size()); ++c)
    for (const auto& s : components[c].steps) owner[s.segment] = c;

  for (int c = 0; c < static_cast<int>(components.size()); ++c) {
    Component& comp = components[c];
    const int image = owner[relabel[comp.steps.front().segment]];
    for (const auto& s : comp.steps)
      if (owner[relabel[s.segment]] != image)
        throw Error(ErrorKind::DegenerateConfiguration, "relabel splits a component");
    comp.relabel_image = image;
  }
  for (int c = 0; c < static_cast<int>(components.size()); ++c) {
    Component& comp = components[c];
    int order = 1, orbit = c;
    for (int next = comp.relabel_image; next != c; next = components[next].relabel_image) {
      orbit = std::min(orbit, next);
      if (++order > 4) throw Error(ErrorKind::DegenerateConfiguration, "relabel orbit longer than 4");
    }
    comp.order = order;
    comp.orbit = orbit;

    if (comp.topology == Topology::Arc) {
      const auto& chords = *comp.end_chords;
      comp.cls = chords[0].kind == ChordKind::OppositePair && chords[1].kind == ChordKind::AdjacentPair
                     ? ComponentClass::Hyperbolic
                     : ComponentClass::OtherArc;
    } else {
      comp.cls = order == 1 ? ComponentClass::Elliptic : ComponentClass::OtherLoop;
    }

    std::optional<CyclicOrder> grace;
    comp.square_count_labeled = 0;
    for (const auto& step : comp.steps) {
      const Segment& seg = segments[step.segment];
      const std::array<double, 4> t = seg.boundary_t(seg.interior_rho());
      const CyclicOrder here = cyclic_order_class(t, polygon.size());
      if (grace && *grace != here) throw Error(ErrorKind::MixedGracefulness, "gracefulness changes along a component");
      grace = here;
      if (std::abs(seg.rho_lo - 1.0) < 1e-9 || std::abs(seg.rho_hi - 1.0) < 1e-9)
        throw Error(ErrorKind::NotGeneric, "inscribed square with a vertex at a polygon vertex");
      if (seg.contains_rho(1.0)) ++comp.square_count_labeled;
    }
    comp.gracefulness = *grace;
  }
}

ParityReport parity_report(const Analysis& analysis) {
  ParityReport p;
  int labeled = 0, graceful = 0;
  for (int c = 0; c < static_cast<int>(analysis.components.size()); ++c) {
    const Component& comp = analysis.components[c];
    labeled += comp.square_count_labeled;
    if (comp.gracefulness == CyclicOrder::Graceful) graceful += comp.square_count_labeled;
    if (comp.orbit != c) continue;
    if (comp.cls == ComponentClass::Hyperbolic) ++p.omega_h;
    if (comp.cls == ComponentClass::Elliptic) ++p.omega_e;
  }
  if (labeled % 4 != 0 || graceful % 4 != 0)
    throw Error(ErrorKind::NonIntegerOrbit, "labeled square count " + std::to_string(labeled) + " is not a multiple of 4");
  p.omega = labeled / 4;
  p.graceful_square_count = graceful / 4;
  p.parity_ok = (p.omega + p.omega_h + p.omega_e) % 2 == 0;
  return p;
}

Analysis analyze(const Polygon& polygon, const TraceOptions& options) {
  Analysis a{polygon, options, {}, {}, {}, 0, {}};
  for (const QuadPattern& p : enumerate_quad_patterns(polygon, options)) {
    std::vector<Segment> segs = trace_segments(polygon, p, options);
    for (auto& s : segs) a.segments.push_back(std::move(s));
  }
  a.components = assemble_components(polygon, a.segments, options);
  classify_components(polygon, a.segments, a.components, options);
  a.segment_relabel = relabel_segments(a.segments);
  for (const auto& c : a.components) a.labeled_square_count += c.square_count_labeled;
  a.parity = parity_report(a);
  return a;
}

double Analysis::rho_at(int component, double u) const {
  const Component& c = components.at(component);
  const int m = static_cast<int>(c.steps.size());
  u = std::clamp(u, 0.0, 1.0);
  const int idx = std::min(static_cast<int>(std::floor(u * m)), m - 1);
  const ComponentStep& step = c.steps[idx];
  return step_rho(segments[step.segment], step.forward, u * m - idx, options);
}

LabeledRectangle Analysis::sample(int component, double u) const {
  const Component& c = components.at(component);
  const int m = static_cast<int>(c.steps.size());
  u = std::clamp(u, 0.0, 1.0);
  const int idx = std::min(static_cast<int>(std::floor(u * m)), m - 1);
  const ComponentStep& step = c.steps[idx];
  return segments[step.segment].rectangle_at(step_rho(segments[step.segment], step.forward, u * m - idx, options));
}

std::vector<double> Analysis::square_parameters(int component) const {
  const Component& c = components.at(component);
  const int m = static_cast<int>(c.steps.size());
  std::vector<double> out;
  for (int i = 0; i < m; ++i) {
    const Segment& s = segments[c.steps[i].segment];
    if (!s.contains_rho(1.0)) continue;
    const double a = std::log(effective_lo(s, options)), b = std::log(effective_hi(s, options));
    double v = (0.0 - a) / (b - a);
    if (!c.steps[i].forward) v = 1.0 - v;
    out.push_back((i + v) / m);
  }
  return out;
}

std::vector<int> Analysis::orbit_representatives() const {
  std::vector<int> out;
  for (int c = 0; c < static_cast<int>(components.size()); ++c)
    if (components[c].orbit == c) out.push_back(c);
  return out;
}

std::vector<Interval> uncovered_intervals(std::vector<Interval> covered, int edge_count, double merge_tol) {
  const double n = edge_count;
  std::vector<Interval> gaps;
  if (covered.empty()) return {{0.0, n}};
  for (auto& iv : covered) {
    if (iv.hi < iv.lo) std::swap(iv.lo, iv.hi);
  }
  std::sort(covered.begin(), covered.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged{covered.front()};
  for (std::size_t i = 1; i < covered.size(); ++i) {
    if (covered[i].lo <= merged.back().hi + merge_tol)
      merged.back().hi = std::max(merged.back().hi, covered[i].hi);
    else
      merged.push_back(covered[i]);
  }
  for (std::size_t i = 0; i + 1 < merged.size(); ++i)
    if (merged[i + 1].lo - merged[i].hi > merge_tol) gaps.push_back({merged[i].hi, merged[i + 1].lo});
  const double wrap_gap = merged.front().lo + n - merged.back().hi;
  if (wrap_gap > merge_tol) gaps.push_back({merged.back().hi, merged.front().lo + n});
  std::stable_sort(gaps.begin(), gaps.end(), [](const Interval& a, const Interval& b) { return a.length() > b.length(); });
  return gaps;
}

std::vector<Interval> covered_intervals(const Analysis& analysis, const std::vector<int>& components) {
  std::vector<Interval> out;
  for (int c : components) {
    for (const auto& step : analysis.components.at(c).steps) {
      const Segment& seg = analysis.segments[step.segment];
      const std::array<double, 4> t0 = seg.end_boundary_t(0), t1 = seg.end_boundary_t(1);
      for (int k = 0; k < 4; ++k) {
        double lo = std::min(t0[k], t1[k]), hi = std::max(t0[k], t1[k]);
        for (double b : critical_points(seg.family.parameter[k])) {
          if (!seg.contains_rho(b)) continue;
          const double t = seg.boundary_t(b)[k];
          lo = std::min(lo, t);
          hi = std::max(hi, t);
        }
        out.push_back({lo, hi});
      }
    }
  }
  return out;
}

std::vector<Interval> coverage(const Analysis& analysis, const std::vector<int>& components) {
  return uncovered_intervals(covered_intervals(analysis, components), analysis.polygon.size());
}

std::vector<Interval> coverage(const LabeledRectangle& rectangle, const Polygon& polygon) {
  std::vector<Interval> pts;
  for (const Point& p : rectangle.vertices) {
    const double t = polygon.position_of(p).t;
    pts.push_back({t, t});
  }
  return uncovered_intervals(pts, polygon.size());
}

namespace {

struct TraversalSample {
  int segment;
  double rho;  // 0 and infinity stand for the end limits
};

std::vector<TraversalSample> traversal_samples(const Analysis& a, int component, double max_step, int per_segment) {
  const Component& c = a.components.at(component);
  const int n = a.polygon.size();
  std::vector<TraversalSample> out;
  for (const auto& step : c.steps) {
    const Segment& seg = a.segments[step.segment];
    std::vector<double> rhos;
    if (seg.rho_lo <= 0) rhos.push_back(0.0);
    const double la = std::log(effective_lo(seg, a.options)), lb = std::log(effective_hi(seg, a.options));
    const int base = std::max(per_segment, 2);
    for (int i = 0; i < base; ++i) rhos.push_back(std::exp(la + (lb - la) * i / (base - 1)));
    if (!std::isfinite(seg.rho_hi)) rhos.push_back(kInf);

    const auto t_of = [&](double rho) {
      if (rho <= 0) return seg.end_boundary_t(0);
      if (!std::isfinite(rho)) return seg.end_boundary_t(1);
      return seg.boundary_t(rho);
    };
    std::vector<double> refined{rhos.front()};
    for (std::size_t i = 1; i < rhos.size(); ++i) {
      // Depth-first bisection in log rho keeps the samples in order.
      const auto refine = [&](auto&& self, double x, double y, int depth) -> void {
        const bool finite = x > 0 && std::isfinite(y);
        if (finite && depth < 40) {
          const auto tx = t_of(x), ty = t_of(y);
          double worst = 0;
          for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(wrap_delta(ty[k] - tx[k], n)));
          if (worst >= max_step) {
            const double mid = std::sqrt(x * y);
            self(self, x, mid, depth + 1);
            self(self, mid, y, depth + 1);
            return;
          }
        }
        refined.push_back(y);
      };
      refine(refine, refined.back(), rhos[i], 0);
    }
    if (!step.forward) std::reverse(refined.begin(), refined.end());
    for (std::size_t i = out.empty() ? 0 : 1; i < refined.size(); ++i) out.push_back({step.segment, refined[i]});
  }
  return out;
}

}  // namespace

std::vector<std::array<double, 4>> component_boundary_samples(const Analysis& analysis, int component, double max_step,
                                                              int per_segment) {
  std::vector<std::array<double, 4>> out;
  for (const auto& s : traversal_samples(analysis, component, max_step, per_segment)) {
    const Segment& seg = analysis.segments[s.segment];
    if (s.rho <= 0) out.push_back(seg.end_boundary_t(0));
    else if (!std::isfinite(s.rho)) out.push_back(seg.end_boundary_t(1));
    else out.push_back(seg.boundary_t(s.rho));
  }
  return out;
}

std::vector<LabeledRectangle> component_rectangles(const Analysis& analysis, int component, double max_step,
                                                   int per_segment) {
  std::vector<LabeledRectangle> out;
  for (const auto& s : traversal_samples(analysis, component, max_step, per_segment)) {
    const Segment& seg = analysis.segments[s.segment];
    if (s.rho <= 0) out.push_back(seg.end_rectangle(0));
    else if (!std::isfinite(s.rho)) out.push_back(seg.end_rectangle(1));
    else out.push_back(seg.rectangle_at(s.rho));
  }
  return out;
}

LiftReport lift_vertex_paths(const std::vector<std::array<double, 4>>& samples, int edge_count) {
  LiftReport report;
  report.samples = static_cast<int>(samples.size());
  if (samples.empty()) return report;
  const double n = edge_count;
  std::array<double, 4> lifted = samples.front();
  for (int k = 1; k < 4; ++k) {
    double d = std::fmod(lifted[k] - lifted[0], n);
    if (d < 0) d += n;
    lifted[k] = lifted[0] + d;
  }
  const std::array<double, 4> start = lifted;
  const auto ordered = [&](const std::array<double, 4>& v) {
    return v[0] < v[1] && v[1] < v[2] && v[2] < v[3] && v[3] < v[0] + n;
  };
  report.ineq_ok = ordered(lifted);
  for (std::size_t i = 1; i < samples.size(); ++i) {
    for (int k = 0; k < 4; ++k) {
      const double d = wrap_delta(samples[i][k] - samples[i - 1][k], edge_count);
      if (std::abs(d) >= 0.5) throw Error(ErrorKind::LiftAmbiguity, "vertex moved half an edge between samples");
      lifted[k] += d;
    }
    if (!ordered(lifted)) report.ineq_ok = false;
  }
  for (int k = 0; k < 4; ++k) {
    report.displacement[k] = lifted[k] - start[k];
    report.windings[k] = std::lround(report.displacement[k] / n);
  }
  return report;
}

LiftReport lift_loop_vertices(const Analysis& analysis, int component) {
  const Component& c = analysis.components.at(component);
  if (c.topology != Topology::Loop) throw Error(ErrorKind::PreconditionFailed, "lifting needs a loop component");
  LiftReport report = lift_vertex_paths(component_boundary_samples(analysis, component), analysis.polygon.size());
  if (c.order == 1) {
    std::map<int, int> position;
    for (int i = 0; i < static_cast<int>(c.steps.size()); ++i) position[c.steps[i].segment] = i;
    int seg = c.steps.front().segment, best = static_cast<int>(c.steps.size());
    for (int j = 1; j < 4; ++j) {
      seg = analysis.segment_relabel[seg];
      const auto it = position.find(seg);
      if (it != position.end() && it->second > 0 && it->second < best) {
        best = it->second;
        report.shift = j;
      }
    }
  }
  return report;
}

MorseType chord_morse_index(const Chord& chord, const Polygon& polygon) {
  const double h = 1e-4 * polygon.perimeter();
  const double u = polygon.arclength_at(polygon.position_of(chord.endpoints[0]).t);
  const double w = polygon.arclength_at(polygon.position_of(chord.endpoints[1]).t);
  const auto d = [&](double a, double b) {
    return distance(polygon.point_at(polygon.t_at_arclength(a)), polygon.point_at(polygon.t_at_arclength(b)));
  };
  const double center = d(u, w);
  static constexpr int ring[8][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
  std::array<double, 8> diff{};
  for (int i = 0; i < 8; ++i) {
    diff[i] = d(u + ring[i][0] * h, w + ring[i][1] * h) - center;
    if (std::abs(diff[i]) < 1e-12) return MorseType::Degenerate;
  }
  int changes = 0;
  for (int i = 0; i < 8; ++i)
    if ((diff[i] > 0) != (diff[(i + 1) % 8] > 0)) ++changes;
  if (changes == 0) return MorseType::Extremum;
  if (changes == 4) return MorseType::Saddle;
  return MorseType::Degenerate;
}

}  // namespace inscribed
