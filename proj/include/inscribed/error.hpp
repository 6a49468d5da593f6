#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace inscribed {

enum class ErrorKind {
  PointOffBoundary,
  DegenerateConfiguration,
  InvalidPolygon,
  NotSimple,
  TooFewVertices,
  InvalidRatio,
  InvalidQuad,
  DegenerateConic,
  NotGeneric,
  EventCollision,
  UnmatchedCrossing,
  BranchPoint,
  MixedGracefulness,
  NonIntegerOrbit,
  LiftAmbiguity,
  PerturbationFailed,
  NoGlobalComponent,
  DegenerateTriangle,
  PreconditionFailed,
  TheoremViolation,
  SchemaError,
  IoError,
  NotFound,
};

std::string_view to_string(ErrorKind kind);

/// Exception carrying a machine-readable kind; every failure the library
/// reports goes through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace inscribed
