#pragma once

// Best conformal maps of a spherical region. The log-scale u = log m of any
// conformal map from the unit sphere to the plane satisfies Laplace-Beltrami
// u = K = 1; the map with least max/min scale ratio is the one whose scale is
// constant on the boundary, so its u solves the Dirichlet problem
//   Delta u = 1 inside,  u = 0 on the boundary,
// and its distortion ratio is exp(-min u).

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "carta/distortion.hpp"
#include "carta/lagrange.hpp"

namespace carta {

struct MeshNode {
  enum Direction { north = 0, south = 1, east = 2, west = 3 };

  SpherePoint point;
  bool boundary = false;
  /// Node indices of the stencil neighbours, -1 when absent.
  std::array<int, 4> neighbors{-1, -1, -1, -1};
};

class RegionMesh {
 public:
  enum class Layout { latlon_grid, polar_cap };

  Layout layout = Layout::latlon_grid;
  double spacing = 0.0;  // radians
  std::vector<MeshNode> nodes;

  // polar_cap layout only
  bool south_cap = true;
  double cap_radius = 0.0;
  std::vector<int> ring_of_node;

  std::size_t interior_count() const;
  std::size_t boundary_count() const;
  std::vector<SpherePoint> points() const;
};

/// Grid nodes of the lat/lon lattice (multiples of `spacing`) inside the
/// great-circle polygon `boundary`. A boundary that is a single parallel
/// around a pole is routed to build_polar_cap_mesh.
RegionMesh build_region_mesh(std::span<const SpherePoint> boundary, double spacing);

/// Rings of geodesic radius i * R / n about a pole, n = ceil(R / spacing).
RegionMesh build_polar_cap_mesh(double cap_radius, double spacing, bool south_cap = true);

/// True when the great-circle polygon is convex (equivalently geodesically
/// convex, for polygons within an open hemisphere).
bool is_geodesically_convex(std::span<const SpherePoint> boundary);

struct SolverOptions {
  double residual_tolerance = 1e-8;
  std::size_t max_iterations = 1'000'000;
};

struct ScalarField {
  std::vector<double> values;  // one per mesh node
  double residual = 0.0;       // max-norm of (Delta_h u - 1) over interior nodes
  std::size_t iterations = 0;
};

ScalarField solve_log_scale(const RegionMesh& mesh, const SolverOptions& options = {});

/// exp(max u - min u).
double distortion_ratio(const ScalarField& field);

/// Rigid rotation of the sphere carrying a chosen point to the South pole.
class SphereRotation {
 public:
  static SphereRotation to_south_pole(const SpherePoint& center);

  SpherePoint apply(const SpherePoint& p) const;

 private:
  std::array<Vec3, 3> rows_{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
};

enum class ChebyshevVerdict { optimal_matches_projection, projection_suboptimal, optimality_violated };

std::string_view to_string(ChebyshevVerdict verdict);

struct ChebyshevComparison {
  double ratio_optimal = 1.0;
  double ratio_projection = 1.0;
  double allowance = 0.0;  // coefficient * spacing^2
  ChebyshevVerdict verdict = ChebyshevVerdict::optimal_matches_projection;
};

/// Compares the optimal ratio with the ratio of a Lagrange projection sampled
/// at the mesh nodes. With `aspect_center`, the sphere is first rotated so
/// that point becomes the projection's South pole.
ChebyshevComparison compare_with_projection(const RegionMesh& mesh, const ScalarField& field,
                                            const LagrangeProjectionSpec& spec,
                                            std::optional<SpherePoint> aspect_center = std::nullopt,
                                            double allowance_coefficient = 10.0);

ChebyshevComparison chebyshev_vs_projection(const RegionMesh& mesh, const LagrangeProjectionSpec& spec,
                                            std::optional<SpherePoint> aspect_center = std::nullopt,
                                            double allowance_coefficient = 10.0);

}  // namespace carta
