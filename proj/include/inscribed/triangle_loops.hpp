#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "inscribed/config_space.hpp"
#include "inscribed/geom.hpp"

namespace inscribed {

struct TrianglePath {
  std::vector<std::array<BoundaryPosition, 3>> samples;
  bool closed = false;
};

/// Net turns of a closed boundary path, from its lift to R.  Throws
/// LiftAmbiguity when consecutive samples are half an edge or more apart.
long winding_number(std::span<const BoundaryPosition> path, int edge_count);

enum class TriangleLoopClass { GracefulEssential, UngracefulEssential, Inessential, Mixed };

std::string_view to_string(TriangleLoopClass cls);

struct TriangleLoopReport {
  TriangleLoopClass cls = TriangleLoopClass::Inessential;
  std::array<long, 3> windings{};
  bool graceful = true;
};

/// Throws DegenerateTriangle at the first collinear sample.
TriangleLoopReport classify_triangle_loop(const TrianglePath& path, const Polygon& polygon);

TrianglePath reversed(const TrianglePath& path);

/// Eight consecutive polygon vertices that are consecutive vertices of the
/// convex hull; returns the index of the first.  Throws PreconditionFailed.
int find_convex_run(const Polygon& polygon, int length = 8);

/// a, b, c start on v5, v6, v7 of a convex run v1..v8.  c travels forward
/// to v4, then b to v3, then a to v2, and finally all three advance by three
/// vertices back to the start.
TrianglePath generate_graceful_loop(const Polygon& polygon, int samples_per_stage = 64);

struct EllipticCheck {
  int component = 0;
  TriangleLoopReport report;
};

struct EllipticVerification {
  std::vector<EllipticCheck> checks;
  bool verified = true;  // every elliptic loop is graceful and essential
};

/// Follows (R0, R1, R2) around each elliptic component.  Throws
/// TheoremViolation if one of them gives an ungraceful essential loop.
EllipticVerification verify_no_ungraceful_elliptic(const Analysis& analysis);

}  // namespace inscribed
