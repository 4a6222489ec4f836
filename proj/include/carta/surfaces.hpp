#pragma once

// Surfaces of revolution with unit equatorial radius, their isometric
// coordinates, and Gauss's conformal mapping of a spheroid zone onto a sphere.

#include "carta/geometry.hpp"

namespace carta {

/// Latitudes closer than this to a pole are clipped; the poles themselves are
/// rejected with PoleDegenerate.
inline constexpr double kPoleClip = 1e-8;

class SurfaceOfRevolution {
 public:
  enum class Kind { sphere, spheroid };

  static SurfaceOfRevolution sphere() { return SurfaceOfRevolution(Kind::sphere, 0.0); }
  /// Oblate spheroid with semi-major axis 1 and eccentricity e in [0, 1).
  static SurfaceOfRevolution spheroid(double eccentricity);

  Kind kind() const { return kind_; }
  double eccentricity() const { return e_; }
  bool is_sphere() const { return kind_ == Kind::sphere; }

  /// Distance to the rotation axis, the factor q in the arc element q dt.
  double parallel_radius(double latitude) const;
  /// Meridian radius of curvature: ds = M(phi) dphi.
  double meridian_radius(double latitude) const;
  /// Meridian arc length s from the equator (signed).
  double meridian_arc(double latitude) const;
  double gaussian_curvature(double latitude) const;
  /// Isometric latitude: integral of M / q from the equator.
  double isometric_coordinate(double latitude) const;

 private:
  SurfaceOfRevolution(Kind kind, double e) : kind_(kind), e_(e) {}

  Kind kind_;
  double e_;
};

double parallel_radius(const SurfaceOfRevolution& surface, double latitude);
double isometric_coordinate(const SurfaceOfRevolution& surface, double latitude);

/// Latitude on the sphere whose isometric latitude equals the spheroid's.
double conformal_latitude(double eccentricity, double latitude);
/// Inverse of conformal_latitude.
double geodetic_from_conformal(double eccentricity, double conformal);

/// Gauss's conformal spheroid-to-sphere mapping centred on a latitude phi0.
///
/// Sphere longitude is alpha * lambda and the sphere latitude chi satisfies
///   ln tan(pi/4 + chi/2) = alpha * psi(phi) + ln K,
/// where psi is the spheroid isometric latitude. alpha and K are chosen so
/// the scale is stationary at phi0, and the sphere radius so the scale there
/// is exactly 1.
class GaussSphereMapping {
 public:
  GaussSphereMapping(double eccentricity, double central_latitude);

  double eccentricity() const { return e_; }
  double central_latitude() const { return phi0_; }
  double alpha() const { return alpha_; }
  double sphere_radius() const { return radius_; }

  double sphere_latitude(double latitude) const;
  double sphere_longitude(double longitude) const { return alpha_ * longitude; }
  /// Similarity ratio of the mapping at a given spheroid latitude.
  double scale(double latitude) const;

 private:
  double e_;
  double phi0_;
  double alpha_;
  double log_k_;
  double radius_;
};

double gauss_scale(const GaussSphereMapping& mapping, double latitude);

}  // namespace carta
