#pragma once

// Infinitesimal dilatation m = sqrt((dx^2 + dy^2) / (ds^2 + q^2 dt^2)) of a
// map from a surface of revolution to the plane, evaluated in closed form for
// Lagrange projections and by central differences for arbitrary maps.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "carta/lagrange.hpp"

namespace carta {

using SphereMap = std::function<PlanePoint(const SpherePoint&)>;

inline constexpr double kDefaultProbeStep = 1e-4;

struct DirectionalDilatation {
  double meridian = 0.0;  // |dx, dy| / ds along the meridian
  double parallel = 0.0;  // |dx, dy| / (q dt) along the parallel
  /// Geometric mean of the two.
  double mean() const;
};

/// Central-difference dilatations with step h (radians). Within h of a pole
/// the probes follow two perpendicular great circles through the point.
DirectionalDilatation directional_dilatation_fd(const SphereMap& map, const SpherePoint& p, double h,
                                                const SurfaceOfRevolution& surface = SurfaceOfRevolution::sphere());

double dilatation_fd(const SphereMap& map, const SpherePoint& p, double h = kDefaultProbeStep,
                     const SurfaceOfRevolution& surface = SurfaceOfRevolution::sphere());

/// Richardson combination (4 D(h/2) - D(h)) / 3 of the directional estimates.
double dilatation_fd_richardson(const SphereMap& map, const SpherePoint& p, double h = kDefaultProbeStep,
                                const SurfaceOfRevolution& surface = SurfaceOfRevolution::sphere());

/// Chain rule over the construction steps: spheroid-to-sphere factor,
/// stereographic factor 1 / (1 - sin chi), power factor c rho^(c-1), and the
/// inversion |k| / |z - pole|^2 or Mobius |det| / |cz + d|^2 factor.
double dilatation_analytic(const LagrangeProjectionSpec& spec, const SpherePoint& p);

/// Maximum angular deformation 2 asin((a - b) / (a + b)) of the Richardson
/// extrapolated Jacobian with principal scales a >= b. Zero exactly when the
/// probed map is conformal (or anticonformal); never smaller than the
/// departure from a right angle between meridian and parallel images.
double conformality_defect(const SphereMap& map, const SpherePoint& p, double h = kDefaultProbeStep,
                           const SurfaceOfRevolution& surface = SurfaceOfRevolution::sphere());

struct DilatationSample {
  SpherePoint point;
  double m = 1.0;
  /// Absent when the probe neighbourhood leaves the projection domain.
  std::optional<double> conformality_defect;
};

struct DistortionReport {
  double m_min = 0.0;
  double m_max = 0.0;
  double ratio = 1.0;
  std::vector<DilatationSample> samples;
};

/// Extremes of the closed-form dilatation over the sample points.
DistortionReport distortion_report(const LagrangeProjectionSpec& spec, std::span<const SpherePoint> points);

/// Same for an arbitrary map, using finite differences.
DistortionReport distortion_report(const SphereMap& map, std::span<const SpherePoint> points,
                                   const SurfaceOfRevolution& surface = SurfaceOfRevolution::sphere(),
                                   double h = kDefaultProbeStep);

SphereMap as_sphere_map(const LagrangeProjectionSpec& spec);

}  // namespace carta
