#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "inscribed/four_lines.hpp"
#include "oracles.hpp"

using namespace inscribed;

namespace {

LineQuad unit_square_quad() {
  return LineQuad::make({DirectedLine::from_slope({0, 0}, 1), DirectedLine::from_slope({1, 0}, 2),
                         DirectedLine::from_slope({1, 1}, 3), DirectedLine::from_slope({0, 1}, -1)});
}

// Lines through the vertices of a random convex-ish quadrilateral, with
// random directions; retried until the quad is in general position.
LineQuad random_quad(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1), ang(0, 3.14159265358979);
  for (;;) {
    std::array<DirectedLine, 4> lines;
    const std::array<Point, 4> corner{Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}};
    for (int k = 0; k < 4; ++k) {
      const double a = ang(rng);
      lines[k] = {corner[k] + 0.3 * Point{u(rng), u(rng)}, {std::cos(a), std::sin(a)}};
    }
    try {
      return LineQuad::make(lines, {1e-3, 1e-3, 1.0});
    } catch (const Error&) {
    }
  }
}

std::array<oracle::Line, 4> as_oracle(const LineQuad& q) {
  std::array<oracle::Line, 4> out;
  for (int k = 0; k < 4; ++k) out[k] = {q.line(k).base, q.line(k).direction};
  return out;
}

double max_vertex_gap(const std::array<Point, 4>& a, const std::array<Point, 4>& b) {
  double m = 0;
  for (int k = 0; k < 4; ++k) m = std::max(m, distance(a[k], b[k]));
  return m;
}

}  // namespace

TEST_CASE("aspect matrix is an involution") {
  for (double rho : {0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 10.0, -10.0}) {
    const auto M = aspect_matrix(rho);
    const std::complex<double> det = M[0][0] * M[1][1] - M[0][1] * M[1][0];
    CHECK(std::abs(det + 1.0) < 1e-12);
    CHECK(std::abs(M[0][0] + M[1][1]) < 1e-12);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const std::complex<double> sq = M[i][0] * M[0][j] + M[i][1] * M[1][j];
        CHECK(std::abs(sq - (i == j ? 1.0 : 0.0)) < 1e-12);
      }
  }
}

TEST_CASE("unit square quad at rho 1") {
  const RectangleSolution sol = solve_rectangle(unit_square_quad(), 1.0);
  REQUIRE(std::holds_alternative<LabeledRectangle>(sol));
  const auto& r = std::get<LabeledRectangle>(sol);
  const std::array<Point, 4> expected{Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}};
  CHECK(max_vertex_gap(r.vertices, expected) < 1e-12);

  const RatioFamily fam = family_coefficients(unit_square_quad());
  CHECK(max_vertex_gap(fam.rectangle_at(1.0).vertices, expected) < 1e-12);
  CHECK_THROWS_AS(solve_rectangle(unit_square_quad(), 0.0), Error);
}

TEST_CASE("solver agrees with the 8x8 linear oracle and the grid search") {
  std::mt19937_64 rng(20240601);
  for (int i = 0; i < 200; ++i) {
    const LineQuad q = random_quad(rng);
    for (double rho : {1.5, 0.3, -0.7, 4.0}) {
      const RectangleSolution sol = solve_rectangle(q, rho);
      const auto ref = oracle::rectangle_8x8(as_oracle(q), rho);
      if (!ref) continue;
      REQUIRE(std::holds_alternative<LabeledRectangle>(sol));
      const auto& r = std::get<LabeledRectangle>(sol);
      const double scale = 1.0 + std::abs(distance(r.vertices[0], r.vertices[1])) + norm(r.vertices[0]);
      CHECK(max_vertex_gap(r.vertices, *ref) < 1e-9 * scale);
      CHECK(r.relation_residual() < 1e-9);
      for (int k = 0; k < 4; ++k) CHECK(std::abs(q.line(k).signed_offset(r.vertices[k])) < 1e-9 * scale);
    }
  }
  std::mt19937_64 seeded(17);
  const LineQuad q = random_quad(seeded);
  const auto& r = std::get<LabeledRectangle>(solve_rectangle(q, 1.5));
  const double span = 4 * (1 + norm(r.vertices[0] - q.line(0).base) + norm(r.vertices[1] - q.line(1).base));
  const auto grid = oracle::rectangle_grid_search(as_oracle(q), 1.5, 0.5 * (q.line(0).base + q.line(1).base), span);
  CHECK(max_vertex_gap(r.vertices, grid) < 1e-6);
}

TEST_CASE("family coefficients reproduce the solver") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> logrho(-3, 3);
  for (int i = 0; i < 100; ++i) {
    const LineQuad q = random_quad(rng);
    const RatioFamily fam = family_coefficients(q);
    for (int k = 0; k < 4; ++k) CHECK(fam.parameter[k].num.degree() <= 2);
    CHECK(fam.det.degree() <= 2);
    for (int j = 0; j < 100; ++j) {
      const double rho = std::exp(logrho(rng)) * (j % 2 ? 1 : -1);
      if (std::abs(fam.det(rho)) < 1e-6) continue;
      const auto sol = solve_rectangle(q, rho);
      REQUIRE(std::holds_alternative<LabeledRectangle>(sol));
      const auto& r = std::get<LabeledRectangle>(sol);
      const double scale = 1.0 + norm(r.vertices[0]) + norm(r.vertices[2]);
      CHECK(max_vertex_gap(fam.rectangle_at(rho).vertices, r.vertices) < 1e-9 * scale);
    }
  }
}

TEST_CASE("excluded ratios are the roots of det A and match the slope cross ratio") {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    const LineQuad q = random_quad(rng);
    const ExcludedRatios ex = excluded_ratios(q);
    const RatioFamily fam = family_coefficients(q);
    const double a = fam.det.coefficient(2), b = fam.det.coefficient(1), c = fam.det.coefficient(0);
    const double disc = b * b - 4 * a * c;
    if (ex.complex_roots) {
      CHECK(disc < 0);
      continue;
    }
    if (!ex.a1 || !ex.a2) continue;
    const double r1 = (-b - std::sqrt(disc)) / (2 * a), r2 = (-b + std::sqrt(disc)) / (2 * a);
    CHECK(*ex.a1 == doctest::Approx(std::min(r1, r2)).epsilon(1e-9));
    CHECK(*ex.a2 == doctest::Approx(std::max(r1, r2)).epsilon(1e-9));
    CHECK(*ex.a1 * *ex.a2 == doctest::Approx(slope_cross_ratio(q)).epsilon(1e-9));
    // Vertex maps blow up next to each root.
    for (double root : {*ex.a1, *ex.a2}) {
      const double h = 1e-9 * std::max(1.0, std::abs(root));
      const double s = std::abs(fam.parameter_at(0, root + h)) + std::abs(fam.parameter_at(1, root + h));
      CHECK(s > 1e6);
    }
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("perpendicular diagonals give an infinite family") {
  const auto through = [](Point a, Point b) { return DirectedLine::through(a, b); };
  const LineQuad q = LineQuad::make({through({0, 0}, {0.5, -0.2}), through({0, 0}, {0.5, 0.3}),
                                     through({0.5, 0.3}, {1, 0}), through({1, 0}, {0.5, -0.2})});
  CHECK(diagonals_perpendicular(q));
  const ExcludedRatios ex = excluded_ratios(q);
  REQUIRE(ex.infinite_family_at.has_value());
  const auto sol = solve_rectangle(q, *ex.infinite_family_at);
  REQUIRE(std::holds_alternative<DegeneracyReport>(sol));
  CHECK(std::get<DegeneracyReport>(sol).dimension == DegeneracyReport::Dimension::One);
  CHECK(std::get<DegeneracyReport>(sol).perpendicularity_flag);
}

TEST_CASE("relabeling a solution solves the rotated quad at 1/rho") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const LineQuad q = random_quad(rng);
    const double rho = 0.8;
    const auto a = solve_rectangle(q, rho), b = solve_rectangle(q.rotated(1), 1 / rho);
    REQUIRE(std::holds_alternative<LabeledRectangle>(a));
    REQUIRE(std::holds_alternative<LabeledRectangle>(b));
    const LabeledRectangle shifted = std::get<LabeledRectangle>(a).relabeled();
    CHECK(max_vertex_gap(shifted.vertices, std::get<LabeledRectangle>(b).vertices) < 1e-8);
  }
}

TEST_CASE("permuted quads solve the permuted incidence problem") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 50; ++i) {
    const LineQuad q = random_quad(rng);
    const std::array<int, 4> p{1, 3, 0, 2};
    const LineQuad qp = q.permuted(p);
    const auto sol = solve_rectangle(qp, 1.3);
    const auto ref = oracle::rectangle_8x8({as_oracle(q)[1], as_oracle(q)[3], as_oracle(q)[0], as_oracle(q)[2]}, 1.3);
    REQUIRE(ref.has_value());
    REQUIRE(std::holds_alternative<LabeledRectangle>(sol));
    CHECK(max_vertex_gap(std::get<LabeledRectangle>(sol).vertices, *ref) < 1e-8);
  }
}

TEST_CASE("singular ratios are stationary points of the vertex maps") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 20; ++i) {
    const LineQuad q = random_quad(rng);
    const RatioFamily fam = family_coefficients(q);
    for (int k = 0; k < 4; ++k) {
      const std::vector<double> b = singular_ratios(q, k);
      for (double r : b) {
        const double h = 1e-4;
        const double scale = 1 + std::abs(fam.parameter_at(k, r));
        CHECK(std::abs(fam.parameter_at(k, r + h) - fam.parameter_at(k, r - h)) < 1e-5 * scale);
      }
      // Finite-difference sign changes on a grid in (-20, 20) land near a returned root.
      const int m = 10000;
      double prev = 0;
      for (int j = 0; j <= m; ++j) {
        const double x = -20 + 40.0 * j / m;
        if (std::abs(fam.det(x)) < 1e-3 || std::abs(fam.det(x + 1e-6)) < 1e-3) {
          prev = 0;
          continue;
        }
        const double d = fam.parameter_at(k, x + 1e-6) - fam.parameter_at(k, x - 1e-6);
        if (prev != 0 && (d > 0) != (prev > 0)) {
          bool near_root = false;
          for (double r : b) near_root |= std::abs(r - x) < 40.0 / m * 2;
          CHECK(near_root);
        }
        prev = d;
      }
    }
  }
}

TEST_CASE("constant determinant and linear numerator give no singular ratio") {
  const RationalFunction f{{1.0, 2.0}, {3.0}};
  CHECK(critical_points(f).empty());
}

TEST_CASE("centers lie on a hyperbola") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 50; ++i) {
    const LineQuad q = random_quad(rng);
    const ExcludedRatios ex = excluded_ratios(q);
    if (ex.infinite_family_at) continue;
    const RatioFamily fam = family_coefficients(q);
    const std::vector<Point> centers = sample_centers(fam, 20);
    const Conic six = fit_conic(std::span<const Point>(centers.data(), 6));
    for (std::size_t j = 6; j < centers.size(); ++j) CHECK(six.residual(centers[j]) < 1e-8);
    const Conic all = center_conic(q, 20);
    CHECK(all.discriminant() > 0);
    for (const Point& c : centers) CHECK(all.residual(c) < 1e-8);
  }
}

TEST_CASE("collinear centers are a degenerate conic") {
  const std::vector<Point> pts{{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}};
  CHECK_THROWS_AS(fit_conic(pts), Error);
}

TEST_CASE("repeating quads are classified") {
  const DirectedLine a = DirectedLine::through({0, 0}, {1, 0}), b = DirectedLine::through({1, 0}, {0.5, 1}),
                     c = DirectedLine::through({0.5, 1}, {0, 0});
  CHECK(LineQuad::make({a, a, b, c}).repeat_pattern() == RepeatPattern::Repeat01);
  CHECK(LineQuad::make({a, b, b, c}).repeat_pattern() == RepeatPattern::Repeat12);
  CHECK(LineQuad::make({a, b, c, c}).repeat_pattern() == RepeatPattern::Repeat23);
  CHECK(LineQuad::make({a, b, c, a}).repeat_pattern() == RepeatPattern::Repeat30);
  CHECK(LineQuad::make({a, b, c, a}).kind() == QuadKind::Repeating);
  const DirectedLine d = DirectedLine::through({0, 2}, {1, 2});
  CHECK_THROWS_AS(LineQuad::make({a, b, c, d}), Error);  // a parallel to d
}
