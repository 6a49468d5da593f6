#include "inscribed/four_lines.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace inscribed {

bool same_line(const DirectedLine& a, const DirectedLine& b) {
  if (a.base == b.base && a.direction == b.direction) return true;
  const double scale = std::max({1.0, norm(a.base), norm(b.base)});
  return std::abs(cross(a.direction, b.direction)) < 1e-14 &&
         std::abs(a.signed_offset(b.base)) < 1e-13 * scale;
}

namespace {

void require_general_position(std::span<const DirectedLine> lines, const QuadTolerance& tol) {
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (lines_parallel(lines[i], lines[j], tol.parallel))
        throw Error(ErrorKind::InvalidQuad, "parallel lines in quad");
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      for (std::size_t k = j + 1; k < lines.size(); ++k) {
        const Point p = intersect(lines[i], lines[j]);
        if (std::abs(lines[k].signed_offset(p)) < tol.concurrent * tol.scale)
          throw Error(ErrorKind::InvalidQuad, "three concurrent lines in quad");
      }
}

}  // namespace

LineQuad LineQuad::make(const std::array<DirectedLine, 4>& lines, const QuadTolerance& tol) {
  LineQuad quad;
  quad.lines_ = lines;
  int equal_pairs = 0;
  std::pair<int, int> pair{-1, -1};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (same_line(lines[i], lines[j])) {
        ++equal_pairs;
        pair = {i, j};
      }
  if (equal_pairs == 0) {
    require_general_position(lines, tol);
    quad.kind_ = QuadKind::Ordinary;
    return quad;
  }
  if (equal_pairs > 1) throw Error(ErrorKind::InvalidQuad, "fewer than three distinct lines");
  std::vector<DirectedLine> distinct;
  for (int i = 0; i < 4; ++i)
    if (i != pair.second) distinct.push_back(lines[i]);
  require_general_position(distinct, tol);
  quad.kind_ = QuadKind::Repeating;
  if (pair == std::pair{0, 1}) quad.repeat_ = RepeatPattern::Repeat01;
  else if (pair == std::pair{1, 2}) quad.repeat_ = RepeatPattern::Repeat12;
  else if (pair == std::pair{2, 3}) quad.repeat_ = RepeatPattern::Repeat23;
  else if (pair == std::pair{0, 3}) quad.repeat_ = RepeatPattern::Repeat30;
  else if (pair == std::pair{0, 2}) quad.repeat_ = RepeatPattern::Repeat02;
  else quad.repeat_ = RepeatPattern::Repeat13;
  return quad;
}

LineQuad LineQuad::rotated(int k) const {
  return permuted({k & 3, (k + 1) & 3, (k + 2) & 3, (k + 3) & 3});
}

LineQuad LineQuad::permuted(const std::array<int, 4>& p) const {
  return make({lines_[p[0]], lines_[p[1]], lines_[p[2]], lines_[p[3]]}, QuadTolerance{0.0, 0.0, 1.0});
}

AffineSystem rectangle_system(const LineQuad& quad) {
  const auto& L = quad.lines();
  const Point p0 = L[0].base, p1 = L[1].base, p2 = L[2].base, p3 = L[3].base;
  const Point d0 = L[0].direction, d1 = L[1].direction, d2 = L[2].direction, d3 = L[3].direction;
  AffineSystem s;
  // R2 = R1 + rho*J(R1 - R0) on L2, R3 = R0 + rho*J(R1 - R0) on L3, using
  // cross(a, J b) = dot(a, b).
  s.a0 = {{{0.0, cross(d2, d1)}, {cross(d3, d0), 0.0}}};
  s.a1 = {{{-dot(d2, d0), dot(d2, d1)}, {-dot(d3, d0), dot(d3, d1)}}};
  s.b0 = {-cross(d2, p1 - p2), -cross(d3, p0 - p3)};
  s.b1 = {-dot(d2, p1 - p0), -dot(d3, p1 - p0)};
  return s;
}

std::array<std::array<std::complex<double>, 2>, 2> aspect_matrix(double rho) {
  using C = std::complex<double>;
  const C i(0.0, 1.0);
  return {{{-i * rho, 1.0 + i * rho}, {1.0 - i * rho, i * rho}}};
}

bool diagonals_perpendicular(const LineQuad& quad, double tol) {
  const auto& L = quad.lines();
  for (int k = 0; k < 4; ++k)
    if (lines_parallel(L[k], L[(k + 1) % 4], 1e-14)) return false;
  const Point p01 = intersect(L[0], L[1]), p23 = intersect(L[2], L[3]);
  const Point p12 = intersect(L[1], L[2]), p30 = intersect(L[3], L[0]);
  const Point u = p23 - p01, w = p30 - p12;
  const double nu = norm(u), nw = norm(w);
  if (nu == 0.0 || nw == 0.0) return false;
  return std::abs(dot(u, w)) <= tol * nu * nw;
}

RectangleSolution solve_rectangle(const LineQuad& quad, double rho) {
  if (rho == 0.0) throw Error(ErrorKind::InvalidRatio, "aspect ratio must be nonzero");
  const AffineSystem s = rectangle_system(quad);
  double a[2][2], b[2];
  double scale_a = 0.0, scale_b = 0.0;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      a[r][c] = s.a0[r][c] + rho * s.a1[r][c];
      scale_a = std::max(scale_a, std::abs(a[r][c]));
    }
    b[r] = s.b0[r] + rho * s.b1[r];
    scale_b = std::max(scale_b, std::abs(b[r]));
  }
  const double det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  const double det_tol = 1e-13 * std::max(scale_a * scale_a, 1e-300);
  if (std::abs(det) > det_tol) {
    const double t0 = (b[0] * a[1][1] - a[0][1] * b[1]) / det;
    const double t1 = (a[0][0] * b[1] - b[0] * a[1][0]) / det;
    return LabeledRectangle::from_side(quad.line(0).at(t0), quad.line(1).at(t1), rho);
  }
  DegeneracyReport report;
  report.perpendicularity_flag = diagonals_perpendicular(quad);
  const double aug_tol = 1e-10 * std::max(scale_a * scale_b, 1e-300);
  if (scale_a <= 1e-13) {
    report.dimension = scale_b <= 1e-13 ? DegeneracyReport::Dimension::Two : DegeneracyReport::Dimension::Empty;
  } else {
    const double n0 = b[0] * a[1][1] - a[0][1] * b[1];
    const double n1 = a[0][0] * b[1] - b[0] * a[1][0];
    if (std::abs(n0) > aug_tol || std::abs(n1) > aug_tol) return EmptySolution{};
    report.dimension = DegeneracyReport::Dimension::One;
  }
  if (report.dimension == DegeneracyReport::Dimension::Empty) return EmptySolution{};
  return report;
}

namespace {

Polynomial lin(double c0, double c1) { return Polynomial{c0, c1}; }

struct CramerPolys {
  Polynomial det, n0, n1;
};

CramerPolys cramer(const AffineSystem& s) {
  const Polynomial a00 = lin(s.a0[0][0], s.a1[0][0]), a01 = lin(s.a0[0][1], s.a1[0][1]);
  const Polynomial a10 = lin(s.a0[1][0], s.a1[1][0]), a11 = lin(s.a0[1][1], s.a1[1][1]);
  const Polynomial b0 = lin(s.b0[0], s.b1[0]), b1 = lin(s.b0[1], s.b1[1]);
  return {a00 * a11 - a01 * a10, b0 * a11 - a01 * b1, a00 * b1 - b0 * a10};
}

}  // namespace

LabeledRectangle RatioFamily::rectangle_at(double rho) const {
  LabeledRectangle r;
  for (int k = 0; k < 4; ++k) r.vertices[k] = vertex_at(k, rho);
  r.aspect = rho;
  return r;
}

RatioFamily family_coefficients(const LineQuad& quad) {
  RatioFamily family{quad, {}, {}};
  const CramerPolys first = cramer(rectangle_system(quad));
  const CramerPolys second = cramer(rectangle_system(quad.rotated(2)));
  // Numerators share units, so round-off in one is judged against all four.
  const double cut = 1e-13 * std::max({first.n0.max_abs_coefficient(), first.n1.max_abs_coefficient(),
                                       second.n0.max_abs_coefficient(), second.n1.max_abs_coefficient()});
  family.det = first.det.cleaned();
  family.parameter[0] = {first.n0.truncated(cut).cleaned(), first.det.cleaned()};
  family.parameter[1] = {first.n1.truncated(cut).cleaned(), first.det.cleaned()};
  family.parameter[2] = {second.n0.truncated(cut).cleaned(), second.det.cleaned()};
  family.parameter[3] = {second.n1.truncated(cut).cleaned(), second.det.cleaned()};
  return family;
}

ExcludedRatios excluded_ratios(const LineQuad& quad) {
  ExcludedRatios out;
  const CramerPolys c = cramer(rectangle_system(quad));
  const Polynomial det = c.det.cleaned();
  const std::vector<double> roots = real_roots(det);
  if (det.degree() == 2 && roots.empty()) out.complex_roots = true;
  if (!roots.empty()) out.a1 = roots.front();
  if (roots.size() > 1) out.a2 = roots.back();
  for (double r : roots) {
    const double scale = std::max(c.n0.max_abs_coefficient(), c.n1.max_abs_coefficient()) *
                         std::max(1.0, r * r);
    if (std::abs(c.n0(r)) <= 1e-9 * scale && std::abs(c.n1(r)) <= 1e-9 * scale) {
      out.infinite_family_at = r;
      break;
    }
  }
  return out;
}

double slope_cross_ratio(const LineQuad& quad) {
  const auto& L = quad.lines();
  const Point d0 = L[0].direction, d1 = L[1].direction, d2 = L[2].direction, d3 = L[3].direction;
  return cross(d2, d1) * cross(d3, d0) / (cross(d3, d2) * cross(d1, d0));
}

std::vector<double> critical_points(const RationalFunction& f) {
  std::vector<double> out;
  const Polynomial dn = f.derivative_numerator().cleaned(1e-12);
  const double den_scale = f.den.max_abs_coefficient();
  for (double r : real_roots(dn)) {
    if (std::abs(f.den(r)) <= 1e-12 * den_scale * std::max(1.0, r * r)) continue;
    out.push_back(r);
  }
  return out;
}

std::vector<double> singular_ratios(const LineQuad& quad, int k) {
  return critical_points(family_coefficients(quad).parameter[k & 3]);
}

double Conic::residual(Point p) const {
  const double gx = 2 * a * p.x + b * p.y + d;
  const double gy = b * p.x + 2 * c * p.y + e;
  const double g = std::hypot(gx, gy);
  const double q = std::abs((*this)(p));
  return g > 0 ? q / g : q;
}

Conic fit_conic(std::span<const Point> points) {
  if (points.size() < 5) throw Error(ErrorKind::DegenerateConic, "need at least 5 points");
  Point center{0, 0};
  for (const Point& p : points) center = center + p;
  center = center / static_cast<double>(points.size());
  double spread = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const Point& p : points) {
    const Point q = p - center;
    spread = std::max(spread, norm(q));
    sxx += q.x * q.x;
    sxy += q.x * q.y;
    syy += q.y * q.y;
  }
  // Smaller eigenvalue of the scatter matrix.
  const double mean = 0.5 * (sxx + syy), dev = std::hypot(0.5 * (sxx - syy), sxy);
  if (spread == 0.0 || mean - dev <= 1e-20 * (mean + dev))
    throw Error(ErrorKind::DegenerateConic, "sample points are collinear");

  const double s = spread;
  Eigen::MatrixXd m(points.size(), 6);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double x = (points[i].x - center.x) / s, y = (points[i].y - center.y) / s;
    m.row(i) << x * x, x * y, y * y, x, y, 1.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd v = svd.matrixV().col(5);
  const double ap = v(0), bp = v(1), cp = v(2), dp = v(3), ep = v(4), fp = v(5);
  const double cx = center.x, cy = center.y, s2 = s * s;
  Conic out;
  out.a = ap / s2;
  out.b = bp / s2;
  out.c = cp / s2;
  out.d = (-2 * cx * ap - cy * bp) / s2 + dp / s;
  out.e = (-cx * bp - 2 * cy * cp) / s2 + ep / s;
  out.f = (ap * cx * cx + bp * cx * cy + cp * cy * cy) / s2 - (dp * cx + ep * cy) / s + fp;
  const double n = std::sqrt(out.a * out.a + out.b * out.b + out.c * out.c + out.d * out.d + out.e * out.e + out.f * out.f);
  out.a /= n, out.b /= n, out.c /= n, out.d /= n, out.e /= n, out.f /= n;
  return out;
}

std::vector<Point> sample_centers(const RatioFamily& family, int sample_count) {
  std::vector<Point> centers;
  const double det_scale = family.det.max_abs_coefficient();
  for (int j = 0; static_cast<int>(centers.size()) < sample_count && j < 50 * sample_count; ++j) {
    // Spread over the whole real line, both signs.
    const double u = (j * 0.6180339887498949 - std::floor(j * 0.6180339887498949)) * 0.98 + 0.01;
    const double rho = std::tan(M_PI * (u - 0.5)) * 2.0;
    if (std::abs(rho) < 1e-2) continue;
    if (std::abs(family.det(rho)) < 1e-3 * det_scale * std::max(1.0, rho * rho)) continue;
    const LabeledRectangle r = family.rectangle_at(rho);
    centers.push_back(r.center());
  }
  return centers;
}

Conic center_conic(const LineQuad& quad, int sample_count) {
  if (quad.kind() != QuadKind::Ordinary) throw Error(ErrorKind::DegenerateConic, "center conic needs an ordinary quad");
  return fit_conic(sample_centers(family_coefficients(quad), std::max(sample_count, 6)));
}

}  // namespace inscribed
