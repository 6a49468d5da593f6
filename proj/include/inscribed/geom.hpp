#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "inscribed/error.hpp"

namespace inscribed {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator-(Point a) { return {-a.x, -a.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
  friend Point operator/(Point a, double s) { return {a.x / s, a.y / s}; }
  friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
/// Rotation by +90 degrees (multiplication by i).
inline Point perp(Point a) { return {-a.y, a.x}; }
inline Point lerp(Point a, Point b, double s) { return a + s * (b - a); }

/// Signed area of the triangle (a, b, c); positive when counterclockwise.
inline double orient(Point a, Point b, Point c) { return 0.5 * cross(b - a, c - a); }

double point_segment_distance(Point p, Point a, Point b);
bool segments_intersect(Point a, Point b, Point c, Point d);

struct DirectedLine {
  Point base;
  Point direction;  // unit length

  static DirectedLine through(Point a, Point b);
  static DirectedLine from_slope(Point base, double slope);

  Point at(double t) const { return base + t * direction; }
  double parameter_of(Point p) const { return dot(p - base, direction); }
  double signed_offset(Point p) const { return cross(direction, p - base); }
};

bool lines_parallel(const DirectedLine& a, const DirectedLine& b, double tol = 1e-10);
/// Intersection of two non-parallel lines.
Point intersect(const DirectedLine& a, const DirectedLine& b);

/// Point on the boundary in edge coordinates; t = edge + s lives in R/NZ.
struct BoundaryPosition {
  int edge = 0;
  double s = 0.0;
  double t = 0.0;
};

double signed_area(std::span<const Point> vertices);

/// Simple polygon, stored counterclockwise.  The boundary is parametrized
/// by t in [0, N) with one unit per edge.
class Polygon {
 public:
  /// Validates the vertex list.  A clockwise list is reversed and
  /// `was_reversed()` reports it.
  explicit Polygon(std::vector<Point> vertices);

  int size() const { return static_cast<int>(vertices_.size()); }
  const std::vector<Point>& vertices() const { return vertices_; }
  Point vertex(int i) const { return vertices_[wrap(i)]; }
  const DirectedLine& edge_line(int i) const { return lines_[wrap(i)]; }
  double edge_length(int i) const { return lengths_[wrap(i)]; }
  double perimeter() const { return perimeter_; }
  double diameter() const { return diameter_; }
  bool was_reversed() const { return reversed_; }

  int wrap(int i) const {
    const int n = size();
    return ((i % n) + n) % n;
  }
  double wrap_t(double t) const;

  Point point_at(int edge, double s) const;
  Point point_at(double t) const;
  /// Nearest boundary point in edge coordinates.  Throws PointOffBoundary
  /// when p is farther than tol from the boundary (default 1e-7 * diameter).
  BoundaryPosition position_of(Point p, double tol = -1.0) const;
  double distance_to_boundary(Point p) const;
  bool contains(Point p) const;

  /// Arclength from vertex 0 to the boundary point with coordinate t.
  double arclength_at(double t) const;
  double t_at_arclength(double a) const;

  const std::vector<double>& cumulative_lengths() const { return cumulative_; }

 private:
  std::vector<Point> vertices_;
  std::vector<DirectedLine> lines_;
  std::vector<double> lengths_;
  std::vector<double> cumulative_;
  double perimeter_ = 0.0;
  double diameter_ = 0.0;
  bool reversed_ = false;
};

inline double signed_area(const Polygon& polygon) { return signed_area(polygon.vertices()); }

BoundaryPosition boundary_position(const Polygon& polygon, Point p, double tol = -1.0);

enum class CyclicOrder { Graceful, Ungraceful, Interlaced };

/// Classifies the cyclic order of coordinates on R/periodZ.  Graceful
/// means a rotation of an increasing sequence.
CyclicOrder cyclic_order_class(std::span<const double> t, double period, double tol = 1e-9);
CyclicOrder cyclic_order_class(const std::array<BoundaryPosition, 4>& positions, int edge_count);

/// Labeled rectangle (R0, R1, R2, R3) with R2 - R1 = i rho (R1 - R0) and
/// R3 - R2 = R0 - R1.  rho > 0 iff the labeling is counterclockwise.
struct LabeledRectangle {
  std::array<Point, 4> vertices;
  double aspect = 1.0;

  static LabeledRectangle from_side(Point r0, Point r1, double rho);
  /// Aspect ratio recomputed from the vertex positions, signed by orientation.
  double measured_aspect() const;
  /// (R1, R2, R3, R0); aspect becomes 1/aspect.
  LabeledRectangle relabeled(int shift = 1) const;
  Point center() const { return 0.5 * (vertices[0] + vertices[2]); }
  /// Max deviation from the two defining relations, relative to the first side.
  double relation_residual() const;
};

/// Max vertex-wise distance between two labeled rectangles.
double configuration_distance(const LabeledRectangle& a, const LabeledRectangle& b);

}  // namespace inscribed
