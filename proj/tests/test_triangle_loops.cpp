#include <doctest.h>

#include <algorithm>

#include "inscribed/census.hpp"
#include "inscribed/triangle_loops.hpp"
#include "oracles.hpp"

using namespace inscribed;

namespace {

std::vector<BoundaryPosition> circuit(int n, int turns, int per_edge = 4) {
  std::vector<BoundaryPosition> out;
  const int steps = std::abs(turns) * n * per_edge;
  for (int i = 0; i <= steps; ++i) {
    double t = (turns > 0 ? 1.0 : -1.0) * i / per_edge;
    double w = std::fmod(t, n);
    if (w < 0) w += n;
    out.push_back({static_cast<int>(w), w - std::floor(w), w});
  }
  return out;
}

}  // namespace

TEST_CASE("winding numbers") {
  CHECK(winding_number(circuit(5, 1), 5) == 1);
  CHECK(winding_number(circuit(5, -2), 5) == -2);
  const std::vector<BoundaryPosition> still(20, BoundaryPosition{2, 0.3, 2.3});
  CHECK(winding_number(still, 5) == 0);
  std::vector<BoundaryPosition> both = circuit(5, 1);
  const auto back = circuit(5, -1);
  both.insert(both.end(), back.begin() + 1, back.end());
  CHECK(winding_number(both, 5) == 0);
  const std::vector<BoundaryPosition> coarse{{0, 0, 0}, {2, 0, 2}, {4, 0, 4}, {0, 0, 0}};
  CHECK_THROWS_AS(winding_number(coarse, 5), Error);
}

TEST_CASE("graceful loop on regular polygons") {
  for (int n : {8, 16}) {
    const Polygon p(oracle::regular_polygon(n));
    const TrianglePath path = generate_graceful_loop(p);
    const TriangleLoopReport r = classify_triangle_loop(path, p);
    CHECK(r.cls == TriangleLoopClass::GracefulEssential);
    CHECK(r.windings == std::array<long, 3>{1, 1, 1});

    const TriangleLoopReport back = classify_triangle_loop(reversed(path), p);
    CHECK(back.cls == TriangleLoopClass::GracefulEssential);
    CHECK(back.windings == std::array<long, 3>{-1, -1, -1});

    TrianglePath rotated = path;
    rotated.samples.pop_back();
    std::rotate(rotated.samples.begin(), rotated.samples.begin() + 37, rotated.samples.end());
    rotated.samples.push_back(rotated.samples.front());
    const TriangleLoopReport rot = classify_triangle_loop(rotated, p);
    CHECK(rot.cls == r.cls);
    CHECK(rot.windings == r.windings);
  }
}

TEST_CASE("a wiggle inside one edge is inessential") {
  const Polygon p(oracle::regular_polygon(6));
  TrianglePath path;
  path.closed = true;
  for (int i = 0; i <= 40; ++i) {
    const double d = 0.05 * std::sin(i * 2 * std::numbers::pi / 40);
    path.samples.push_back({BoundaryPosition{0, 0.2 + d, 0.2 + d}, BoundaryPosition{2, 0.5 + d, 2.5 + d},
                            BoundaryPosition{4, 0.5, 4.5}});
  }
  CHECK(classify_triangle_loop(path, p).cls == TriangleLoopClass::Inessential);
}

TEST_CASE("collinear samples are reported") {
  const Polygon p(oracle::regular_polygon(6));
  TrianglePath path;
  path.closed = true;
  path.samples.push_back({BoundaryPosition{0, 0.2, 0.2}, BoundaryPosition{0, 0.5, 0.5}, BoundaryPosition{0, 0.8, 0.8}});
  CHECK_THROWS_AS(classify_triangle_loop(path, p), Error);
}

TEST_CASE("convex run precondition") {
  CHECK_THROWS_AS(find_convex_run(Polygon(oracle::regular_polygon(7))), Error);
  std::vector<Point> star;
  for (int i = 0; i < 10; ++i) {
    const double r = i % 2 ? 0.4 : 1.0, a = 2 * std::numbers::pi * i / 10;
    star.push_back({r * std::cos(a), r * std::sin(a)});
  }
  CHECK_THROWS_AS(generate_graceful_loop(Polygon(star)), Error);
  CHECK_NOTHROW(find_convex_run(Polygon(oracle::regular_polygon(9))));
}

TEST_CASE("elliptic verification is vacuous without elliptic components") {
  const Analysis a = analyze(Polygon({{0, 0}, {1, 0}, {0.51, 0.87}}));
  const EllipticVerification v = verify_no_ungraceful_elliptic(a);
  CHECK(v.verified);
  CHECK(v.checks.empty());
}
