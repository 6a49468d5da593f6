#include "inscribed/triangle_loops.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace inscribed {

std::string_view to_string(TriangleLoopClass cls) {
  switch (cls) {
    case TriangleLoopClass::GracefulEssential: return "GracefulEssential";
    case TriangleLoopClass::UngracefulEssential: return "UngracefulEssential";
    case TriangleLoopClass::Inessential: return "Inessential";
    case TriangleLoopClass::Mixed: return "Mixed";
  }
  return "Unknown";
}

long winding_number(std::span<const BoundaryPosition> path, int edge_count) {
  if (path.size() < 2) return 0;
  const double n = edge_count;
  double lifted = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    double d = std::fmod(path[i].t - path[i - 1].t, n);
    if (d > n / 2) d -= n;
    if (d < -n / 2) d += n;
    if (std::abs(d) >= 0.5)
      throw Error(ErrorKind::LiftAmbiguity, "step of " + std::to_string(d) + " edges at sample " + std::to_string(i));
    lifted += d;
  }
  const double turns = lifted / n;
  const long w = std::lround(turns);
  if (std::abs(turns - w) > 1e-6) throw Error(ErrorKind::LiftAmbiguity, "path does not close up");
  return w;
}

namespace {

int orientation_sign(const std::array<BoundaryPosition, 3>& tri, const Polygon& polygon, int index) {
  const Point a = polygon.point_at(tri[0].t), b = polygon.point_at(tri[1].t), c = polygon.point_at(tri[2].t);
  const double area = orient(a, b, c);
  const double d = polygon.diameter();
  if (std::abs(area) <= 1e-10 * d * d)
    throw Error(ErrorKind::DegenerateTriangle, "collinear triangle at sample " + std::to_string(index));
  return area > 0 ? 1 : -1;
}

int cyclic_sign(const std::array<BoundaryPosition, 3>& tri, const Polygon& polygon) {
  const std::array<double, 3> t{polygon.wrap_t(tri[0].t), polygon.wrap_t(tri[1].t), polygon.wrap_t(tri[2].t)};
  return cyclic_order_class(t, polygon.size()) == CyclicOrder::Graceful ? 1 : -1;
}

BoundaryPosition position_at(const Polygon& polygon, double t) {
  const double w = polygon.wrap_t(t);
  int edge = static_cast<int>(std::floor(w));
  if (edge >= polygon.size()) edge = polygon.size() - 1;
  return {edge, w - edge, w};
}

}  // namespace

TriangleLoopReport classify_triangle_loop(const TrianglePath& path, const Polygon& polygon) {
  if (!path.closed || path.samples.empty()) throw Error(ErrorKind::PreconditionFailed, "triangle loop must be closed");
  TriangleLoopReport report;
  std::vector<std::vector<BoundaryPosition>> tracks(3);
  int orientation = 0, cyclic = 0;
  bool mixed = false;
  for (std::size_t i = 0; i < path.samples.size(); ++i) {
    const auto& tri = path.samples[i];
    const int o = orientation_sign(tri, polygon, static_cast<int>(i));
    const int c = cyclic_sign(tri, polygon);
    if (i == 0) {
      orientation = o;
      cyclic = c;
    } else if (o != orientation || c != cyclic) {
      mixed = true;
    }
    for (int k = 0; k < 3; ++k) tracks[k].push_back(tri[k]);
  }
  for (int k = 0; k < 3; ++k) report.windings[k] = winding_number(tracks[k], polygon.size());
  report.graceful = orientation == cyclic;
  const bool essential = report.windings[0] != 0 && report.windings[1] != 0 && report.windings[2] != 0;
  if (mixed)
    report.cls = TriangleLoopClass::Mixed;
  else if (!essential)
    report.cls = TriangleLoopClass::Inessential;
  else
    report.cls = report.graceful ? TriangleLoopClass::GracefulEssential : TriangleLoopClass::UngracefulEssential;
  return report;
}

TrianglePath reversed(const TrianglePath& path) {
  TrianglePath out = path;
  std::reverse(out.samples.begin(), out.samples.end());
  return out;
}

int find_convex_run(const Polygon& polygon, int length) {
  const int n = polygon.size();
  if (n < length) throw Error(ErrorKind::PreconditionFailed, "polygon has fewer than " + std::to_string(length) + " vertices");
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  const auto& v = polygon.vertices();
  std::sort(order.begin(), order.end(), [&](int a, int b) { return v[a].x < v[b].x || (v[a].x == v[b].x && v[a].y < v[b].y); });
  // Monotone chain, dropping collinear points so every hull vertex is a corner.
  std::vector<int> hull(2 * n);
  int k = 0;
  for (int i : order) {
    while (k >= 2 && orient(v[hull[k - 2]], v[hull[k - 1]], v[i]) <= 0) --k;
    hull[k++] = i;
  }
  for (int j = n - 2, lower = k + 1; j >= 0; --j) {
    const int i = order[j];
    while (k >= lower && orient(v[hull[k - 2]], v[hull[k - 1]], v[i]) <= 0) --k;
    hull[k++] = i;
  }
  hull.resize(k - 1);
  std::map<int, int> next;
  for (std::size_t h = 0; h < hull.size(); ++h) next[hull[h]] = hull[(h + 1) % hull.size()];
  for (int start = 0; start < n; ++start) {
    bool ok = true;
    for (int j = 0; j + 1 < length && ok; ++j) {
      const auto it = next.find(polygon.wrap(start + j));
      ok = it != next.end() && it->second == polygon.wrap(start + j + 1);
    }
    if (ok) return start;
  }
  throw Error(ErrorKind::PreconditionFailed, "no run of " + std::to_string(length) + " consecutive hull vertices");
}

TrianglePath generate_graceful_loop(const Polygon& polygon, int samples_per_stage) {
  const int n = polygon.size();
  const double v1 = find_convex_run(polygon);
  // Lifted coordinates of a, b, c; v_k sits at v1 + k - 1.
  double a = v1 + 4, b = v1 + 5, c = v1 + 6;
  TrianglePath path;
  path.closed = true;
  const auto emit = [&] {
    path.samples.push_back({position_at(polygon, a), position_at(polygon, b), position_at(polygon, c)});
  };
  emit();
  const auto move = [&](double& p, double distance) {
    const int steps = std::max(samples_per_stage, static_cast<int>(std::ceil(distance / 0.25)));
    const double from = p;
    for (int s = 1; s <= steps; ++s) {
      p = from + distance * s / steps;
      emit();
    }
  };
  move(c, n - 3);  // v7 -> v4, once around
  move(b, n - 3);  // v6 -> v3
  move(a, n - 3);  // v5 -> v2
  const int steps = std::max(samples_per_stage, 12);
  const double a0 = a, b0 = b, c0 = c;
  for (int s = 1; s <= steps; ++s) {
    const double d = 3.0 * s / steps;
    a = a0 + d;
    b = b0 + d;
    c = c0 + d;
    emit();
  }
  return path;
}

EllipticVerification verify_no_ungraceful_elliptic(const Analysis& analysis) {
  EllipticVerification out;
  const Polygon& polygon = analysis.polygon;
  for (int c = 0; c < static_cast<int>(analysis.components.size()); ++c) {
    if (analysis.components[c].cls != ComponentClass::Elliptic) continue;
    const std::vector<std::array<double, 4>> samples = component_boundary_samples(analysis, c);
    TrianglePath path;
    path.closed = true;
    for (const auto& t : samples)
      path.samples.push_back({position_at(polygon, t[0]), position_at(polygon, t[1]), position_at(polygon, t[2])});
    EllipticCheck check{c, classify_triangle_loop(path, polygon)};
    if (check.report.cls == TriangleLoopClass::UngracefulEssential)
      throw Error(ErrorKind::TheoremViolation, "elliptic component " + std::to_string(c) +
                                                   " carries an ungraceful essential triangle loop");
    if (check.report.cls != TriangleLoopClass::GracefulEssential) out.verified = false;
    out.checks.push_back(check);
  }
  return out;
}

}  // namespace inscribed
