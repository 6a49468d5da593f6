#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "inscribed/config_space.hpp"
#include "inscribed/geom.hpp"

namespace inscribed {

enum class ViolationKind { ParallelSides, QuadNotGeneric, RectangleTwoVertices, SquareAtVertex, SingularImageAtVertex };

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind = ViolationKind::ParallelSides;
  std::vector<int> edges;     // edges involved, pattern order for quads
  std::vector<int> vertices;  // polygon vertices involved
  double severity = 0.0;      // clearance that failed, normalized
};

struct GenericityThresholds {
  double parallel = 1e-9;      // |cross| of unit edge directions
  double concurrent = 1e-9;    // relative to the diameter
  double event = 1e-10;        // relative rho separation of vertex events
  double square = 1e-9;        // |rho - 1| at a vertex event
  double singular = 1e-8;      // relative to the diameter
  double margin = 1e-12;
};

struct GenericityReport {
  std::vector<Violation> violations;
  bool is_generic = false;
  double margin = 0.0;  // smallest normalized clearance seen
};

GenericityReport check_generic(const Polygon& polygon, const GenericityThresholds& thresholds = {});

/// Repairs violations by slide moves, one move per violation and round, at
/// most 20 rounds.  Throws PerturbationFailed when violations remain.
Polygon slide_perturb(const Polygon& polygon, double epsilon, std::uint64_t seed,
                      const GenericityThresholds& thresholds = {});

/// Moves vertex v a distance `amount` along the edge to its predecessor
/// (toward_previous) or its successor.
Polygon slide_vertex(const Polygon& polygon, int vertex, double amount, bool toward_previous);

double hausdorff_distance(const Polygon& a, const Polygon& b, int samples = 1024);

}  // namespace inscribed
