#pragma once

// Inversive plane geometry, the North-pole stereographic bridge between the
// unit sphere and its equator plane, and great-circle polygon areas.

#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "carta/error.hpp"

namespace carta {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

inline constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
inline constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

/// Maps an angle into (-pi, pi].
double normalize_longitude(double lon);

struct PlanePoint {
  double x = 0.0;
  double y = 0.0;

  constexpr PlanePoint() = default;
  constexpr PlanePoint(double x_, double y_) : x(x_), y(y_) {}
  explicit PlanePoint(std::complex<double> z) : x(z.real()), y(z.imag()) {}

  std::complex<double> complex() const { return {x, y}; }

  friend constexpr PlanePoint operator+(PlanePoint a, PlanePoint b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr PlanePoint operator-(PlanePoint a, PlanePoint b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr PlanePoint operator*(double s, PlanePoint a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(PlanePoint, PlanePoint) = default;
};

inline constexpr double dot(PlanePoint a, PlanePoint b) { return a.x * b.x + a.y * b.y; }
inline constexpr double cross(PlanePoint a, PlanePoint b) { return a.x * b.y - a.y * b.x; }
double norm(PlanePoint p);
double distance(PlanePoint a, PlanePoint b);

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
};

inline constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline constexpr Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double norm(Vec3 v);
Vec3 normalized(Vec3 v);

/// Position on the unit sphere. Latitude is kept in [-pi/2, pi/2] and
/// longitude in (-pi, pi].
class SpherePoint {
 public:
  SpherePoint() = default;
  SpherePoint(double latitude, double longitude);

  static SpherePoint from_degrees(double lat_deg, double lon_deg);
  static SpherePoint from_vector(Vec3 v);
  static SpherePoint south_pole() { return {-kHalfPi, 0.0}; }
  static SpherePoint north_pole() { return {kHalfPi, 0.0}; }

  double latitude() const { return lat_; }
  double longitude() const { return lon_; }
  double colatitude() const { return kHalfPi - lat_; }
  Vec3 unit_vector() const;

 private:
  double lat_ = 0.0;
  double lon_ = 0.0;
};

/// Straight-line (chord) distance between two points of the unit sphere.
double chord_distance(const SpherePoint& a, const SpherePoint& b);

/// A circle or a straight line. Lines are stored as {p : normal . p = offset}
/// with a unit normal.
class GeneralizedCircle {
 public:
  enum class Kind { circle, line };

  static GeneralizedCircle circle(PlanePoint center, double radius);
  static GeneralizedCircle line(PlanePoint normal, double offset);
  static GeneralizedCircle line_through(PlanePoint p, PlanePoint q);

  Kind kind() const { return kind_; }
  bool is_circle() const { return kind_ == Kind::circle; }
  bool is_line() const { return kind_ == Kind::line; }

  PlanePoint center() const;
  double radius() const;
  PlanePoint normal() const;
  double offset() const;

  /// Unsigned orthogonal distance from p to the curve.
  double distance(PlanePoint p) const;

  /// Point on the curve: the angle parameter for a circle, arc length from
  /// the foot of the origin for a line.
  PlanePoint point_at(double t) const;

 private:
  Kind kind_ = Kind::circle;
  PlanePoint center_{};  // circle center, or line unit normal
  double radius_ = 1.0;  // circle radius, or line offset
};

/// z -> (a z + b) / (c z + d) with ad - bc != 0.
class MobiusTransform {
 public:
  using Complex = std::complex<double>;

  MobiusTransform(Complex a, Complex b, Complex c, Complex d);

  static MobiusTransform identity() { return {1.0, 0.0, 0.0, 1.0}; }

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }
  Complex determinant() const { return a_ * d_ - b_ * c_; }

  Complex apply(Complex z) const;
  /// Complex derivative ad-bc / (cz+d)^2.
  Complex derivative(Complex z) const;
  MobiusTransform inverse() const;
  /// Same transform with coefficients scaled so that |det| = 1.
  MobiusTransform normalized() const;

 private:
  Complex a_, b_, c_, d_;
};

/// compose(f, g) is f o g.
MobiusTransform compose(const MobiusTransform& f, const MobiusTransform& g);

/// p -> pole + power (p - pole) / |p - pole|^2.
struct Inversion {
  PlanePoint pole;
  double power = 1.0;

  Inversion(PlanePoint pole_, double power_);
};

PlanePoint invert_point(const Inversion& inv, PlanePoint p);
PlanePoint mobius_apply(const MobiusTransform& m, PlanePoint z);

GeneralizedCircle image_of_circle(const Inversion& inv, const GeneralizedCircle& c);
GeneralizedCircle image_of_circle(const MobiusTransform& m, const GeneralizedCircle& c);

/// Projection from the North pole onto the equator plane; the South pole
/// lands on the origin and the equator on the unit circle.
PlanePoint stereographic_project(const SpherePoint& p);
SpherePoint stereographic_unproject(PlanePoint q);

/// Area in steradians of the great-circle polygon whose interior lies to the
/// left of the traversal (counter-clockwise seen from outside the sphere).
/// A repeated closing vertex is ignored.
double spherical_polygon_area(std::span<const SpherePoint> vertices);

struct CircleFit {
  GeneralizedCircle circle;
  double rms_residual = 0.0;
};

/// Algebraic (Pratt) least-squares generalized circle through the points.
/// Falls back to a line when the curvature, measured in units of the point
/// spread, drops below 1e-10.
CircleFit circle_fit(std::span<const PlanePoint> points);

}  // namespace carta
