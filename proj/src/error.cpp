#include "deform/error.hpp"

namespace deform {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonManifold: return "NonManifold";
    case ErrorCode::NonOrientable: return "NonOrientable";
    case ErrorCode::WrongSurfaceKind: return "WrongSurfaceKind";
    case ErrorCode::NotIncident: return "NotIncident";
    case ErrorCode::MismatchedComplex: return "MismatchedComplex";
    case ErrorCode::BoundaryVertex: return "BoundaryVertex";
    case ErrorCode::BoundaryEdge: return "BoundaryEdge";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotATriangle: return "NotATriangle";
    case ErrorCode::InvalidAngleStructure: return "InvalidAngleStructure";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::IterationLimit: return "IterationLimit";
    case ErrorCode::DegenerateFace: return "DegenerateFace";
    case ErrorCode::NotInA0: return "NotInA0";
    case ErrorCode::PointOnEdge: return "PointOnEdge";
    case ErrorCode::PointOutside: return "PointOutside";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::AtNorthPole: return "AtNorthPole";
    case ErrorCode::VertexNotAtPole: return "VertexNotAtPole";
    case ErrorCode::NotDelaunay: return "NotDelaunay";
    case ErrorCode::NotStrictlyDelaunay: return "NotStrictlyDelaunay";
    case ErrorCode::DegenerateEdge: return "DegenerateEdge";
    case ErrorCode::NormalizationFailure: return "NormalizationFailure";
    case ErrorCode::NotDelaunayInput: return "NotDelaunayInput";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::OriginNotInside: return "OriginNotInside";
    case ErrorCode::OrientationMismatch: return "OrientationMismatch";
    case ErrorCode::InvalidRealization: return "InvalidRealization";
    case ErrorCode::InconclusiveSweep: return "InconclusiveSweep";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace deform
