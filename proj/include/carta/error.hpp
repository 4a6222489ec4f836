#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace carta {

/// Failure categories raised by the library. Every operation that can fail
/// throws carta::Error carrying one of these.
enum class ErrorKind {
  InvalidArgument,
  PoleSingularity,
  PointAtInfinity,
  ProjectionPole,
  DegeneratePolygon,
  InsufficientPoints,
  PoleDegenerate,
  OriginSingularity,
  BranchOverflow,
  OutsideImage,
  DomainEdge,
  EmptyRegion,
  RegionTooSmall,
  SelfIntersectingBoundary,
  DegenerateBoundary,
  DisconnectedRegion,
  PoleInsideRegion,
  NoConvergence,
  PoleOnVertex,
  CoincidentPoints,
  DegenerateTriangle,
  InfeasibleAngles,
  CriticalPoint,
};

std::string_view to_string(ErrorKind kind) noexcept;

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

}  // namespace carta
