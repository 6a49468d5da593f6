#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "inscribed/config_space.hpp"
#include "inscribed/error.hpp"

namespace inscribed {

struct CensusOptions {
  int count = 100;
  int min_sides = 5;
  int max_sides = 13;
  std::uint64_t seed = 1;
  double radial = 0.25;     // radii drawn from 1 +- radial
  double epsilon = 1e-3;    // slide length for the genericity repair
  int max_attempts = 8;     // fresh draws when a sample is not generic
  int threads = 0;          // 0: hardware concurrency
  bool keep_analyses = false;
  TraceOptions trace;
};

/// Radially perturbed regular polygon, then slide-repaired to genericity.
Polygon census_polygon(int sides, std::uint64_t seed, double radial = 0.25, double epsilon = 1e-3);

/// Odd counts in [lo, hi], or every count when the range holds no odd one.
std::vector<int> census_side_counts(int lo, int hi);

struct CensusEntry {
  int index = 0;
  int sides = 0;
  std::uint64_t seed = 0;
  int attempts = 0;
  std::optional<Polygon> polygon;
  std::optional<Analysis> analysis;
  ParityReport parity;
  int labeled_square_count = 0;
  int ungood_components = 0;   // global components that are not graceful
  bool triangles_verified = false;
  double seconds = 0.0;
  std::optional<ErrorKind> error;
  std::string message;

  bool theorems_hold() const;
};

std::vector<CensusEntry> run_census(const CensusOptions& options);
std::string census_csv(const std::vector<CensusEntry>& entries);

}  // namespace inscribed
