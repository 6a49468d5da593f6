#include "inscribed/genericity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

namespace inscribed {

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::ParallelSides: return "ParallelSides";
    case ViolationKind::QuadNotGeneric: return "QuadNotGeneric";
    case ViolationKind::RectangleTwoVertices: return "RectangleTwoVertices";
    case ViolationKind::SquareAtVertex: return "SquareAtVertex";
    case ViolationKind::SingularImageAtVertex: return "SingularImageAtVertex";
  }
  return "Unknown";
}

GenericityReport check_generic(const Polygon& polygon, const GenericityThresholds& thr) {
  GenericityReport report;
  const int n = polygon.size();
  const double diam = polygon.diameter();
  double margin = std::numeric_limits<double>::infinity();

  std::vector<std::vector<bool>> parallel(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double c = std::abs(cross(polygon.edge_line(i).direction, polygon.edge_line(j).direction));
      margin = std::min(margin, c);
      if (c < thr.parallel) {
        parallel[i][j] = parallel[j][i] = true;
        report.violations.push_back({ViolationKind::ParallelSides, {i, j}, {}, c});
      }
    }

  std::set<int> bad_edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (parallel[i][j]) continue;
      const Point p = intersect(polygon.edge_line(i), polygon.edge_line(j));
      for (int k = j + 1; k < n; ++k) {
        if (parallel[i][k] || parallel[j][k]) continue;
        const double d = std::abs(polygon.edge_line(k).signed_offset(p)) / diam;
        margin = std::min(margin, d);
        if (d < thr.concurrent) {
          report.violations.push_back({ViolationKind::QuadNotGeneric, {i, j, k}, {}, d});
          bad_edges.insert({i, j, k});
        }
      }
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (parallel[i][j]) bad_edges.insert({i, j});

  TraceOptions options;
  options.event_tol = thr.event;
  const auto usable = [&](const QuadPattern& p) {
    for (int e : p.edges)
      if (bad_edges.count(e)) return false;
    return true;
  };

  std::vector<TraceIssue> issues;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const QuadPattern pattern{{a, b, c, d}};
          if (pattern.distinct_count() < 3 || !usable(pattern)) continue;
          // Quads whose rectangle system is consistent at a degenerate ratio.
          if (pattern.distinct_count() == 4 && a < b && a < c && a < d) {
            const ExcludedRatios ex = excluded_ratios(pattern_quad(polygon, pattern, options));
            if (ex.infinite_family_at && *ex.infinite_family_at > 0)
              report.violations.push_back({ViolationKind::QuadNotGeneric, {a, b, c, d}, {}, 0.0});
          }
          std::vector<Segment> segments;
          try {
            segments = trace_segments(polygon, pattern, options, &issues);
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::NotGeneric) throw;
            report.violations.push_back({ViolationKind::QuadNotGeneric, {a, b, c, d}, {}, 0.0});
            continue;
          }
          for (const Segment& seg : segments) {
            // Two vertices on one edge collapsing onto an end of that edge.
            for (int end = 0; end < 2; ++end) {
              if (!std::holds_alternative<DegenerateChord>(seg.ends[end])) continue;
              const std::array<std::array<int, 2>, 2> pairs =
                  end == 0 ? std::array<std::array<int, 2>, 2>{{{0, 3}, {1, 2}}}
                           : std::array<std::array<int, 2>, 2>{{{0, 1}, {2, 3}}};
              const LabeledRectangle r = seg.end_rectangle(end);
              for (const auto& [i, j] : pairs) {
                const int e = pattern.edges[i];
                if (pattern.edges[j] != e) continue;
                for (int v : {e, polygon.wrap(e + 1)}) {
                  const double dist = distance(r.vertices[i], polygon.vertex(v)) / diam;
                  margin = std::min(margin, dist);
                  if (dist < thr.singular)
                    report.violations.push_back({ViolationKind::RectangleTwoVertices, {a, b, c, d}, {v}, dist});
                }
              }
            }
            for (int k = 0; k < 4; ++k) {
              const int e = pattern.edges[k];
              for (double r : critical_points(seg.family.parameter[k])) {
                if (!(r >= seg.rho_lo * (1 - 1e-9) && r <= seg.rho_hi * (1 + 1e-9))) continue;
                const Point q = seg.family.vertex_at(k, r);
                for (int v : {e, polygon.wrap(e + 1)}) {
                  const double dist = distance(q, polygon.vertex(v)) / diam;
                  margin = std::min(margin, dist);
                  if (dist < thr.singular)
                    report.violations.push_back({ViolationKind::SingularImageAtVertex, {a, b, c, d}, {v}, dist});
                }
              }
            }
          }
        }
  for (const TraceIssue& issue : issues) {
    const std::vector<int> edges(issue.pattern.edges.begin(), issue.pattern.edges.end());
    if (issue.kind == TraceIssue::Kind::EventCollision)
      report.violations.push_back({ViolationKind::RectangleTwoVertices, edges, issue.polygon_vertices, 0.0});
    else
      report.violations.push_back({ViolationKind::SquareAtVertex, edges, issue.polygon_vertices, std::abs(issue.rho - 1)});
  }

  report.margin = margin;
  report.is_generic = report.violations.empty() && margin > thr.margin;
  return report;
}

Polygon slide_vertex(const Polygon& polygon, int vertex, double amount, bool toward_previous) {
  std::vector<Point> v = polygon.vertices();
  const int i = polygon.wrap(vertex);
  const Point target = polygon.vertex(toward_previous ? i - 1 : i + 1);
  const Point dir = target - v[i];
  v[i] = v[i] + (amount / norm(dir)) * dir;
  return Polygon(std::move(v));
}

Polygon slide_perturb(const Polygon& polygon, double epsilon, std::uint64_t seed, const GenericityThresholds& thr) {
  double shortest = std::numeric_limits<double>::infinity();
  for (int i = 0; i < polygon.size(); ++i) shortest = std::min(shortest, polygon.edge_length(i));
  if (!(epsilon > 0) || epsilon >= 0.01 * shortest)
    throw Error(ErrorKind::PreconditionFailed, "slide amount must be below 1% of the shortest edge");

  std::mt19937_64 rng(seed);
  const auto unit = [&] { return 1.0 - static_cast<double>(rng() >> 11) * 0x1.0p-53; };  // (0, 1]
  Polygon current = polygon;
  GenericityReport report;
  for (int round = 0; round < 20; ++round) {
    report = check_generic(current, thr);
    if (report.is_generic) return current;
    std::set<int> moved_vertices;
    std::set<int> rotated_edges;
    for (const Violation& v : report.violations) {
      if (v.kind == ViolationKind::ParallelSides || v.kind == ViolationKind::QuadNotGeneric) {
        bool handled = false;
        for (int e : v.edges)
          if (rotated_edges.count(e)) handled = true;
        if (handled) continue;
        // Rotate one listed edge by sliding one of its ends along the neighbouring edge.
        const int e = v.edges[rng() % v.edges.size()];
        if ((rng() & 1) != 0)
          current = slide_vertex(current, e, epsilon * unit(), true);
        else
          current = slide_vertex(current, e + 1, epsilon * unit(), false);
        rotated_edges.insert(e);
      } else {
        bool handled = false;
        for (int p : v.vertices)
          if (moved_vertices.count(p)) handled = true;
        if (handled || v.vertices.empty()) continue;
        const int p = v.vertices[rng() % v.vertices.size()];
        const bool back = (rng() & 1) != 0;
        current = slide_vertex(current, p, epsilon * unit(), back);
        moved_vertices.insert(p);
      }
    }
  }
  report = check_generic(current, thr);
  if (report.is_generic) return current;
  throw Error(ErrorKind::PerturbationFailed,
              std::to_string(report.violations.size()) + " violations remain after 20 rounds");
}

namespace {

double directed_hausdorff(const Polygon& a, const Polygon& b, int samples) {
  double worst = 0.0;
  for (const Point& v : a.vertices()) worst = std::max(worst, b.distance_to_boundary(v));
  for (int i = 0; i < samples; ++i) {
    const Point p = a.point_at(a.t_at_arclength(a.perimeter() * i / samples));
    worst = std::max(worst, b.distance_to_boundary(p));
  }
  return worst;
}

}  // namespace

double hausdorff_distance(const Polygon& a, const Polygon& b, int samples) {
  return std::max(directed_hausdorff(a, b, samples), directed_hausdorff(b, a, samples));
}

}  // namespace inscribed
