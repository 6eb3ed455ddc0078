#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace deform {

enum class ErrorCode {
  NonManifold,
  NonOrientable,
  WrongSurfaceKind,
  NotIncident,
  MismatchedComplex,
  BoundaryVertex,
  BoundaryEdge,
  NonFinite,
  NotATriangle,
  InvalidAngleStructure,
  Infeasible,
  IterationLimit,
  DegenerateFace,
  NotInA0,
  PointOnEdge,
  PointOutside,
  OutOfRange,
  AtNorthPole,
  VertexNotAtPole,
  NotDelaunay,
  NotStrictlyDelaunay,
  DegenerateEdge,
  NormalizationFailure,
  NotDelaunayInput,
  SolverFailure,
  OriginNotInside,
  OrientationMismatch,
  InvalidRealization,
  InconclusiveSweep,
  Parse,
};

std::string_view to_string(ErrorCode code);

/// Every library failure is reported through this exception; `code()` lets
/// callers (the CLI in particular) map failures without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace deform
