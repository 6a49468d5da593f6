#include "inscribed/geom.hpp"

#include <algorithm>
#include <limits>

namespace inscribed {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PointOffBoundary: return "PointOffBoundary";
    case ErrorKind::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorKind::InvalidPolygon: return "InvalidPolygon";
    case ErrorKind::NotSimple: return "NotSimple";
    case ErrorKind::TooFewVertices: return "TooFewVertices";
    case ErrorKind::InvalidRatio: return "InvalidRatio";
    case ErrorKind::InvalidQuad: return "InvalidQuad";
    case ErrorKind::DegenerateConic: return "DegenerateConic";
    case ErrorKind::NotGeneric: return "NotGeneric";
    case ErrorKind::EventCollision: return "EventCollision";
    case ErrorKind::UnmatchedCrossing: return "UnmatchedCrossing";
    case ErrorKind::BranchPoint: return "BranchPoint";
    case ErrorKind::MixedGracefulness: return "MixedGracefulness";
    case ErrorKind::NonIntegerOrbit: return "NonIntegerOrbit";
    case ErrorKind::LiftAmbiguity: return "LiftAmbiguity";
    case ErrorKind::PerturbationFailed: return "PerturbationFailed";
    case ErrorKind::NoGlobalComponent: return "NoGlobalComponent";
    case ErrorKind::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::TheoremViolation: return "TheoremViolation";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::NotFound: return "NotFound";
  }
  return "Unknown";
}

double point_segment_distance(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double s = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + s * ab);
}

bool segments_intersect(Point a, Point b, Point c, Point d) {
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  auto on_segment = [](Point p, Point q, Point r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
           r.y <= std::max(p.y, q.y);
  };
  if (d1 == 0 && on_segment(a, b, c)) return true;
  if (d2 == 0 && on_segment(a, b, d)) return true;
  if (d3 == 0 && on_segment(c, d, a)) return true;
  if (d4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

DirectedLine DirectedLine::through(Point a, Point b) {
  const Point d = b - a;
  const double len = norm(d);
  if (len == 0.0) throw Error(ErrorKind::InvalidQuad, "line through coincident points");
  return {a, d / len};
}

DirectedLine DirectedLine::from_slope(Point base, double slope) {
  const double len = std::hypot(1.0, slope);
  return {base, {1.0 / len, slope / len}};
}

bool lines_parallel(const DirectedLine& a, const DirectedLine& b, double tol) {
  return std::abs(cross(a.direction, b.direction)) < tol;
}

Point intersect(const DirectedLine& a, const DirectedLine& b) {
  const double denom = cross(a.direction, b.direction);
  const double t = cross(b.base - a.base, b.direction) / denom;
  return a.at(t);
}

double signed_area(std::span<const Point> vertices) {
  double area = 0.0;
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    area += cross(vertices[i], vertices[(i + 1) % n]);
  }
  return 0.5 * area;
}

namespace {

double diameter_of(const std::vector<Point>& v) {
  double best = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) best = std::max(best, distance(v[i], v[j]));
  return best;
}

}  // namespace

Polygon::Polygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3) throw Error(ErrorKind::TooFewVertices, "polygon needs at least 3 vertices");
  for (const Point& p : vertices_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw Error(ErrorKind::InvalidPolygon, "non-finite vertex coordinate");
  }
  diameter_ = diameter_of(vertices_);
  const int n = size();
  for (int i = 0; i < n; ++i) {
    if (distance(vertices_[i], vertices_[(i + 1) % n]) <= 1e-9 * diameter_)
      throw Error(ErrorKind::InvalidPolygon, "consecutive vertices coincide at index " + std::to_string(i));
  }
  // Brute-force simplicity: non-adjacent edges must not meet; adjacent
  // edges must only share their common vertex.
  for (int i = 0; i < n; ++i) {
    const Point a = vertices_[i], b = vertices_[(i + 1) % n];
    for (int j = i + 1; j < n; ++j) {
      const Point c = vertices_[j], d = vertices_[(j + 1) % n];
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (!adjacent) {
        if (segments_intersect(a, b, c, d))
          throw Error(ErrorKind::NotSimple, "edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
      } else {
        // Overlap along a common line folds the boundary back on itself.
        const Point shared = (j == i + 1) ? b : a;
        const Point other_i = (j == i + 1) ? a : b;
        const Point other_j = (j == i + 1) ? d : c;
        const Point u = other_i - shared, w = other_j - shared;
        if (std::abs(cross(u, w)) <= 1e-14 * norm(u) * norm(w) && dot(u, w) > 0)
          throw Error(ErrorKind::NotSimple, "adjacent edges " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
      }
    }
  }
  if (signed_area(vertices_) < 0) {
    std::reverse(vertices_.begin(), vertices_.end());
    reversed_ = true;
  }
  lines_.reserve(n);
  lengths_.reserve(n);
  cumulative_.assign(n + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    const Point a = vertices_[i], b = vertices_[(i + 1) % n];
    lines_.push_back(DirectedLine::through(a, b));
    lengths_.push_back(distance(a, b));
    cumulative_[i + 1] = cumulative_[i] + lengths_.back();
  }
  perimeter_ = cumulative_[n];
}

double Polygon::wrap_t(double t) const {
  const double n = size();
  double r = std::fmod(t, n);
  if (r < 0) r += n;
  if (r >= n) r -= n;
  return r;
}

Point Polygon::point_at(int edge, double s) const {
  const int i = wrap(edge);
  return lerp(vertices_[i], vertices_[(i + 1) % size()], s);
}

Point Polygon::point_at(double t) const {
  const double w = wrap_t(t);
  int edge = static_cast<int>(std::floor(w));
  if (edge >= size()) edge = size() - 1;
  return point_at(edge, w - edge);
}

BoundaryPosition Polygon::position_of(Point p, double tol) const {
  if (tol < 0) tol = 1e-7 * diameter_;
  double best = std::numeric_limits<double>::infinity();
  int best_edge = 0;
  double best_s = 0.0;
  for (int i = 0; i < size(); ++i) {
    const Point a = vertices_[i];
    const Point ab = vertices_[(i + 1) % size()] - a;
    const double s = std::clamp(dot(p - a, ab) / dot(ab, ab), 0.0, 1.0);
    const double d = distance(p, a + s * ab);
    // Strict comparison: ties keep the lower edge index.
    if (d < best - 1e-15 * diameter_) {
      best = d;
      best_edge = i;
      best_s = s;
    }
  }
  if (best > tol) throw Error(ErrorKind::PointOffBoundary, "point is not on the polygon boundary");
  if (best_s >= 1.0 - 1e-12) {
    best_edge = (best_edge + 1) % size();
    best_s = 0.0;
  }
  return {best_edge, best_s, best_edge + best_s};
}

BoundaryPosition boundary_position(const Polygon& polygon, Point p, double tol) {
  return polygon.position_of(p, tol);
}

double Polygon::distance_to_boundary(Point p) const {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < size(); ++i)
    best = std::min(best, point_segment_distance(p, vertices_[i], vertices_[(i + 1) % size()]));
  return best;
}

bool Polygon::contains(Point p) const {
  bool inside = false;
  const int n = size();
  for (int i = 0, j = n - 1; i < n; j = i++) {
    const Point a = vertices_[i], b = vertices_[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

double Polygon::arclength_at(double t) const {
  const double w = wrap_t(t);
  int edge = std::min(static_cast<int>(std::floor(w)), size() - 1);
  return cumulative_[edge] + (w - edge) * lengths_[edge];
}

double Polygon::t_at_arclength(double a) const {
  a = std::fmod(a, perimeter_);
  if (a < 0) a += perimeter_;
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), a);
  int edge = static_cast<int>(it - cumulative_.begin()) - 1;
  edge = std::clamp(edge, 0, size() - 1);
  return edge + (a - cumulative_[edge]) / lengths_[edge];
}

CyclicOrder cyclic_order_class(std::span<const double> t, double period, double tol) {
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double gap = std::fmod(std::abs(t[i] - t[j]), period);
      gap = std::min(gap, period - gap);
      if (gap < tol) throw Error(ErrorKind::DegenerateConfiguration, "coincident boundary coordinates");
    }
  }
  int descents = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (t[(i + 1) % n] < t[i]) ++descents;
  }
  if (descents == 1) return CyclicOrder::Graceful;
  if (descents == static_cast<int>(n) - 1) return CyclicOrder::Ungraceful;
  return CyclicOrder::Interlaced;
}

CyclicOrder cyclic_order_class(const std::array<BoundaryPosition, 4>& positions, int edge_count) {
  const std::array<double, 4> t{positions[0].t, positions[1].t, positions[2].t, positions[3].t};
  return cyclic_order_class(t, static_cast<double>(edge_count));
}

LabeledRectangle LabeledRectangle::from_side(Point r0, Point r1, double rho) {
  const Point side = rho * perp(r1 - r0);
  return {{r0, r1, r1 + side, r0 + side}, rho};
}

double LabeledRectangle::measured_aspect() const {
  const double first = distance(vertices[1], vertices[0]);
  const double second = distance(vertices[2], vertices[1]);
  const double sign = cross(vertices[1] - vertices[0], vertices[2] - vertices[1]) >= 0 ? 1.0 : -1.0;
  return sign * second / first;
}

LabeledRectangle LabeledRectangle::relabeled(int shift) const {
  const int k = ((shift % 4) + 4) % 4;
  LabeledRectangle out;
  for (int i = 0; i < 4; ++i) out.vertices[i] = vertices[(i + k) % 4];
  out.aspect = (k % 2 == 0) ? aspect : 1.0 / aspect;
  return out;
}

double LabeledRectangle::relation_residual() const {
  const Point first = vertices[1] - vertices[0];
  const double scale = norm(first);
  const Point e1 = (vertices[2] - vertices[1]) - aspect * perp(first);
  const Point e2 = (vertices[3] - vertices[2]) + first;
  return std::max(norm(e1), norm(e2)) / scale;
}

double configuration_distance(const LabeledRectangle& a, const LabeledRectangle& b) {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) worst = std::max(worst, distance(a.vertices[i], b.vertices[i]));
  return worst;
}

}  // namespace inscribed
