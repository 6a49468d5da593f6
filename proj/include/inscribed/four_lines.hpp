#pragma once

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "inscribed/geom.hpp"
#include "inscribed/polynomial.hpp"

namespace inscribed {

enum class QuadKind { Ordinary, Repeating };

/// Which positions share a line.  The first four are the adjacent repeats
/// (L0,L0,L1,L2), (L0,L1,L1,L2), (L0,L1,L2,L2), (L0,L1,L2,L0); the last two
/// put one line under a diagonal, which only arises for non-convex polygons.
enum class RepeatPattern { Repeat01, Repeat12, Repeat23, Repeat30, Repeat02, Repeat13 };

struct QuadTolerance {
  double parallel = 1e-10;    // |cross| of unit directions
  double concurrent = 1e-10;  // distance of the third line from a crossing, relative to scale
  double scale = 1.0;         // length scale (polygon diameter)
};

class LineQuad {
 public:
  /// Classifies and validates four lines.  Two positions count as the same
  /// line when they compare equal (same base and direction).  Throws
  /// InvalidQuad on parallel or concurrent lines.
  static LineQuad make(const std::array<DirectedLine, 4>& lines, const QuadTolerance& tol = {});

  const std::array<DirectedLine, 4>& lines() const { return lines_; }
  const DirectedLine& line(int k) const { return lines_[k & 3]; }
  QuadKind kind() const { return kind_; }
  std::optional<RepeatPattern> repeat_pattern() const { return repeat_; }
  /// (L_k, L_{k+1}, L_{k+2}, L_{k+3}).
  LineQuad rotated(int k) const;
  /// (L_p[0], L_p[1], L_p[2], L_p[3]).
  LineQuad permuted(const std::array<int, 4>& p) const;

 private:
  std::array<DirectedLine, 4> lines_{};
  QuadKind kind_ = QuadKind::Ordinary;
  std::optional<RepeatPattern> repeat_;
};

bool same_line(const DirectedLine& a, const DirectedLine& b);

/// The 2x2 system A(rho) (t0, t1)^T = b(rho) for R0 = L0(t0), R1 = L1(t1),
/// in affine form A = A0 + rho A1, b = b0 + rho b1.
struct AffineSystem {
  std::array<std::array<double, 2>, 2> a0{}, a1{};
  std::array<double, 2> b0{}, b1{};
};
AffineSystem rectangle_system(const LineQuad& quad);

/// M(rho) with (R2, R3) = M (R0, R1) over the complex numbers.
std::array<std::array<std::complex<double>, 2>, 2> aspect_matrix(double rho);

struct EmptySolution {};

struct DegeneracyReport {
  enum class Dimension { Zero, One, Two, Empty };
  Dimension dimension = Dimension::Empty;
  bool perpendicularity_flag = false;
};

using RectangleSolution = std::variant<LabeledRectangle, EmptySolution, DegeneracyReport>;

/// Unique rectangle of aspect rho with R_k on L_k.  Throws InvalidRatio for rho = 0.
RectangleSolution solve_rectangle(const LineQuad& quad, double rho);

/// True when the line through L0^L1 and L2^L3 is perpendicular to the line
/// through L1^L2 and L3^L0.  False when a crossing is undefined.
bool diagonals_perpendicular(const LineQuad& quad, double tol = 1e-9);

/// Vertex maps in closed form: the line parameter of R_k is num_k/den_k.
/// R0, R1 come from the system for (L0,L1,L2,L3); R2, R3 from the system
/// for (L2,L3,L0,L1) at the same rho, which keeps every numerator quadratic.
struct RatioFamily {
  LineQuad quad;
  std::array<RationalFunction, 4> parameter;
  Polynomial det;  // det A(rho)

  double parameter_at(int k, double rho) const { return parameter[k](rho); }
  Point vertex_at(int k, double rho) const { return quad.line(k).at(parameter[k](rho)); }
  LabeledRectangle rectangle_at(double rho) const;
};

RatioFamily family_coefficients(const LineQuad& quad);

struct ExcludedRatios {
  std::optional<double> a1, a2;   // a1 < a2 when both present
  std::optional<double> infinite_family_at;
  bool complex_roots = false;     // diagnostic: det A has no real roots
};

ExcludedRatios excluded_ratios(const LineQuad& quad);

/// Product a1*a2 predicted from the slopes m_k of the lines:
/// (m0 - m3)(m1 - m2) / ((m0 - m1)(m2 - m3)), evaluated with angles so
/// vertical lines are fine.  This is minus the cross ratio (m0, m2; m3, m1).
double slope_cross_ratio(const LineQuad& quad);

/// Real rho where the vertex map of R_k is stationary, sorted.
std::vector<double> singular_ratios(const LineQuad& quad, int k);
std::vector<double> critical_points(const RationalFunction& f);

struct Conic {
  double a = 0, b = 0, c = 0, d = 0, e = 0, f = 0;  // a x^2 + b xy + c y^2 + d x + e y + f

  double operator()(Point p) const { return a * p.x * p.x + b * p.x * p.y + c * p.y * p.y + d * p.x + e * p.y + f; }
  double discriminant() const { return b * b - 4 * a * c; }
  /// |Q(p)| normalized by the gradient magnitude: approximate distance to the curve.
  double residual(Point p) const;
};

/// Least-squares conic through the points (unit coefficient vector, SVD).
/// Throws DegenerateConic when the points are collinear.
Conic fit_conic(std::span<const Point> points);

/// Conic through sample_count rectangle centers of the family.
Conic center_conic(const LineQuad& quad, int sample_count = 20);
std::vector<Point> sample_centers(const RatioFamily& family, int sample_count);

}  // namespace inscribed
