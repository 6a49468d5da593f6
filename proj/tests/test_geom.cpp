#include <doctest.h>

#include <array>
#include <random>

#include "inscribed/geom.hpp"

using namespace inscribed;

namespace {

const std::vector<Point> kUnitSquare{{0, 0}, {1, 0}, {1, 1}, {0, 1}};

}  // namespace

TEST_CASE("signed area follows orientation") {
  CHECK(signed_area(kUnitSquare) == doctest::Approx(1.0));
  std::vector<Point> cw(kUnitSquare.rbegin(), kUnitSquare.rend());
  CHECK(signed_area(cw) == doctest::Approx(-1.0));
  const std::vector<Point> tri{{0, 0}, {2, 0}, {0, 2}};
  CHECK(signed_area(tri) == doctest::Approx(2.0));
}

TEST_CASE("polygon construction normalizes to counterclockwise") {
  std::vector<Point> cw(kUnitSquare.rbegin(), kUnitSquare.rend());
  const Polygon p(cw);
  CHECK(p.was_reversed());
  CHECK(signed_area(p) > 0);
  CHECK_FALSE(Polygon(kUnitSquare).was_reversed());
  CHECK(Polygon(kUnitSquare).perimeter() == doctest::Approx(4.0));
}

TEST_CASE("polygon construction rejects bad input") {
  const auto kind_of = [](std::vector<Point> v) {
    try {
      Polygon p(std::move(v));
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::NotFound;
  };
  CHECK(kind_of({{0, 0}, {1, 0}}) == ErrorKind::TooFewVertices);
  CHECK(kind_of({{0, 0}, {1, 1}, {1, 0}, {0, 1}}) == ErrorKind::NotSimple);
  CHECK(kind_of({{0, 0}, {1, 0}, {1, 0}, {0, 1}}) == ErrorKind::InvalidPolygon);
}

TEST_CASE("boundary position on the unit square") {
  const Polygon sq(kUnitSquare);
  BoundaryPosition b = boundary_position(sq, {0.5, 0});
  CHECK(b.edge == 0);
  CHECK(b.s == doctest::Approx(0.5));
  CHECK(b.t == doctest::Approx(0.5));

  b = boundary_position(sq, {1, 1});
  CHECK(b.edge == 2);
  CHECK(b.s == doctest::Approx(0.0));
  CHECK(b.t == doctest::Approx(2.0));

  b = boundary_position(sq, {0, 0.25});
  CHECK(b.edge == 3);
  CHECK(b.s == doctest::Approx(0.75));
  CHECK(b.t == doctest::Approx(3.75));

  CHECK_THROWS_AS(boundary_position(sq, {0.5, 0.5}), Error);
}

TEST_CASE("boundary position inverts point reconstruction") {
  const Polygon p({{0, 0}, {3, 0.2}, {2.5, 2}, {0.4, 1.7}, {-0.5, 0.8}});
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.001, 0.999);
  for (int i = 0; i < 200; ++i) {
    const int edge = static_cast<int>(rng() % p.size());
    const double s = u(rng);
    const BoundaryPosition b = boundary_position(p, p.point_at(edge, s));
    CHECK(b.edge == edge);
    CHECK(b.s == doctest::Approx(s).epsilon(1e-9));
  }
}

TEST_CASE("cyclic order classes") {
  const std::array<double, 4> up{0.1, 1.2, 2.3, 3.4}, down{3.4, 2.3, 1.2, 0.1}, mixed{0.1, 2.3, 1.2, 3.4};
  CHECK(cyclic_order_class(up, 4.0) == CyclicOrder::Graceful);
  CHECK(cyclic_order_class(down, 4.0) == CyclicOrder::Ungraceful);
  CHECK(cyclic_order_class(mixed, 4.0) == CyclicOrder::Interlaced);

  std::array<double, 4> rot = up;
  for (int k = 0; k < 4; ++k) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    CHECK(cyclic_order_class(rot, 4.0) == CyclicOrder::Graceful);
  }
  const std::array<double, 4> tie{0.1, 0.1, 2.0, 3.0};
  CHECK_THROWS_AS(cyclic_order_class(tie, 4.0), Error);
}

TEST_CASE("labeled rectangle relations") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 100; ++i) {
    const Point r0{u(rng), u(rng)}, r1{u(rng), u(rng)};
    double rho = u(rng);
    if (std::abs(rho) < 0.05) rho = 0.5;
    const LabeledRectangle r = LabeledRectangle::from_side(r0, r1, rho);
    CHECK(r.relation_residual() < 1e-12);
    CHECK(r.measured_aspect() == doctest::Approx(rho).epsilon(1e-12));
    CHECK((orient(r.vertices[0], r.vertices[1], r.vertices[2]) > 0) == (rho > 0));
    const LabeledRectangle s = r.relabeled();
    CHECK(s.aspect == doctest::Approx(1 / rho));
    CHECK(s.relation_residual() < 1e-12);
  }
}

TEST_CASE("segment predicates") {
  CHECK(segments_intersect({0, 0}, {1, 1}, {0, 1}, {1, 0}));
  CHECK_FALSE(segments_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1}));
  CHECK(point_segment_distance({0.5, 1}, {0, 0}, {1, 0}) == doctest::Approx(1.0));
  CHECK(point_segment_distance({2, 0}, {0, 0}, {1, 0}) == doctest::Approx(1.0));
}
