#include "carta/error.hpp"

namespace carta {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::PoleSingularity: return "PoleSingularity";
    case ErrorKind::PointAtInfinity: return "PointAtInfinity";
    case ErrorKind::ProjectionPole: return "ProjectionPole";
    case ErrorKind::DegeneratePolygon: return "DegeneratePolygon";
    case ErrorKind::InsufficientPoints: return "InsufficientPoints";
    case ErrorKind::PoleDegenerate: return "PoleDegenerate";
    case ErrorKind::OriginSingularity: return "OriginSingularity";
    case ErrorKind::BranchOverflow: return "BranchOverflow";
    case ErrorKind::OutsideImage: return "OutsideImage";
    case ErrorKind::DomainEdge: return "DomainEdge";
    case ErrorKind::EmptyRegion: return "EmptyRegion";
    case ErrorKind::RegionTooSmall: return "RegionTooSmall";
    case ErrorKind::SelfIntersectingBoundary: return "SelfIntersectingBoundary";
    case ErrorKind::DegenerateBoundary: return "DegenerateBoundary";
    case ErrorKind::DisconnectedRegion: return "DisconnectedRegion";
    case ErrorKind::PoleInsideRegion: return "PoleInsideRegion";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::PoleOnVertex: return "PoleOnVertex";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorKind::InfeasibleAngles: return "InfeasibleAngles";
    case ErrorKind::CriticalPoint: return "CriticalPoint";
  }
  return "Unknown";
}

}  // namespace carta
