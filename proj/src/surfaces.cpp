#include "carta/surfaces.hpp"

#include <cmath>
#include <string>

#include "carta/quadrature.hpp"

namespace carta {

namespace {

double checked_latitude(double latitude) {
  if (!std::isfinite(latitude)) throw Error(ErrorKind::InvalidArgument, "non-finite latitude");
  if (std::abs(latitude) >= kHalfPi)
    throw Error(ErrorKind::PoleDegenerate, "latitude " + std::to_string(latitude) + " is at a pole");
  const double limit = kHalfPi - kPoleClip;
  return std::clamp(latitude, -limit, limit);
}

void check_eccentricity(double e) {
  if (!(e >= 0.0 && e < 1.0)) throw Error(ErrorKind::InvalidArgument, "eccentricity must lie in [0, 1)");
}

double sphere_isometric(double latitude) { return std::log(std::tan(kPi / 4.0 + latitude / 2.0)); }

// Gudermannian: inverse of sphere_isometric.
double gudermannian(double psi) { return std::atan(std::sinh(psi)); }

double spheroid_isometric(double e, double latitude) {
  const double s = std::sin(latitude);
  return std::asinh(std::tan(latitude)) - e * std::atanh(e * s);
}

}  // namespace

SurfaceOfRevolution SurfaceOfRevolution::spheroid(double eccentricity) {
  check_eccentricity(eccentricity);
  return SurfaceOfRevolution(Kind::spheroid, eccentricity);
}

double SurfaceOfRevolution::parallel_radius(double latitude) const {
  const double phi = checked_latitude(latitude);
  if (is_sphere()) return std::cos(phi);
  const double s = std::sin(phi);
  return std::cos(phi) / std::sqrt(1.0 - e_ * e_ * s * s);
}

double SurfaceOfRevolution::meridian_radius(double latitude) const {
  const double phi = checked_latitude(latitude);
  if (is_sphere()) return 1.0;
  const double s = std::sin(phi);
  const double w2 = 1.0 - e_ * e_ * s * s;
  return (1.0 - e_ * e_) / (w2 * std::sqrt(w2));
}

double SurfaceOfRevolution::meridian_arc(double latitude) const {
  const double phi = checked_latitude(latitude);
  if (is_sphere()) return phi;
  return integrate_gauss_kronrod([this](double x) { return meridian_radius(x); }, 0.0, phi);
}

double SurfaceOfRevolution::gaussian_curvature(double latitude) const {
  const double phi = checked_latitude(latitude);
  if (is_sphere()) return 1.0;
  const double s = std::sin(phi);
  const double w2 = 1.0 - e_ * e_ * s * s;
  return w2 * w2 / (1.0 - e_ * e_);
}

double SurfaceOfRevolution::isometric_coordinate(double latitude) const {
  const double phi = checked_latitude(latitude);
  if (is_sphere()) return std::asinh(std::tan(phi));
  return spheroid_isometric(e_, phi);
}

double parallel_radius(const SurfaceOfRevolution& surface, double latitude) {
  return surface.parallel_radius(latitude);
}

double isometric_coordinate(const SurfaceOfRevolution& surface, double latitude) {
  return surface.isometric_coordinate(latitude);
}

double conformal_latitude(double eccentricity, double latitude) {
  check_eccentricity(eccentricity);
  const double phi = checked_latitude(latitude);
  if (eccentricity == 0.0) return phi;
  return gudermannian(spheroid_isometric(eccentricity, phi));
}

double geodetic_from_conformal(double eccentricity, double conformal) {
  check_eccentricity(eccentricity);
  const double chi = checked_latitude(conformal);
  if (eccentricity == 0.0) return chi;
  const double target = std::asinh(std::tan(chi));
  const double e2 = eccentricity * eccentricity;
  double phi = chi;
  for (int i = 0; i < 60; ++i) {
    const double s = std::sin(phi);
    const double residual = spheroid_isometric(eccentricity, phi) - target;
    // d psi / d phi = (1 - e^2) / ((1 - e^2 sin^2) cos)
    const double slope = (1.0 - e2) / ((1.0 - e2 * s * s) * std::cos(phi));
    const double step = residual / slope;
    phi -= step;
    if (std::abs(step) < 1e-16) break;
  }
  return phi;
}

GaussSphereMapping::GaussSphereMapping(double eccentricity, double central_latitude)
    : e_(eccentricity), phi0_(checked_latitude(central_latitude)) {
  check_eccentricity(eccentricity);
  const double e2 = e_ * e_;
  const double c0 = std::cos(phi0_);
  alpha_ = std::sqrt(1.0 + e2 * c0 * c0 * c0 * c0 / (1.0 - e2));
  const double chi0 = std::asin(std::sin(phi0_) / alpha_);
  log_k_ = sphere_isometric(chi0) - alpha_ * spheroid_isometric(e_, phi0_);
  radius_ = 1.0;
  radius_ = 1.0 / scale(phi0_);
}

double GaussSphereMapping::sphere_latitude(double latitude) const {
  const double phi = checked_latitude(latitude);
  if (e_ == 0.0 && alpha_ == 1.0) return phi;
  return gudermannian(alpha_ * spheroid_isometric(e_, phi) + log_k_);
}

double GaussSphereMapping::scale(double latitude) const {
  const double phi = checked_latitude(latitude);
  const double s = std::sin(phi);
  const double q = std::cos(phi) / std::sqrt(1.0 - e_ * e_ * s * s);
  return radius_ * alpha_ * std::cos(sphere_latitude(phi)) / q;
}

double gauss_scale(const GaussSphereMapping& mapping, double latitude) { return mapping.scale(latitude); }

}  // namespace carta
