#pragma once

// The Lagrange family of conformal projections, built as
//   stereographic projection from the North pole onto the equator plane,
//   the power map (rho, omega) -> (rho^c, c omega),
//   an inversion or Mobius transformation of the plane.
// Every member sends meridians and parallels to circles or straight lines.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "carta/geometry.hpp"
#include "carta/surfaces.hpp"

namespace carta {

using PostTransform = std::variant<std::monostate, Inversion, MobiusTransform>;

class LagrangeProjectionSpec {
 public:
  /// exponent in (0, 2]; central_meridian in radians.
  explicit LagrangeProjectionSpec(double exponent, double central_meridian = 0.0, PostTransform post = {},
                                  SurfaceOfRevolution surface = SurfaceOfRevolution::sphere());

  double exponent() const { return exponent_; }
  double central_meridian() const { return central_meridian_; }
  const PostTransform& post_transform() const { return post_; }
  const SurfaceOfRevolution& surface() const { return surface_; }

  /// Half-width of the admissible longitude window about the central
  /// meridian: min(pi, pi / c).
  double branch_half_width() const;
  /// True when the post transform reverses orientation (an inversion).
  bool reverses_orientation() const { return std::holds_alternative<Inversion>(post_); }

 private:
  double exponent_;
  double central_meridian_;
  PostTransform post_;
  SurfaceOfRevolution surface_;
};

/// (rho, omega) -> (rho^c, c omega) about the origin, omega in (-pi, pi].
PlanePoint lambert_power(PlanePoint z, double c);
/// Inverse of lambert_power; OutsideImage when the polar angle of w exceeds
/// c pi in magnitude.
PlanePoint inverse_lambert_power(PlanePoint w, double c);

PlanePoint apply_post_transform(const PostTransform& post, PlanePoint z);
PlanePoint invert_post_transform(const PostTransform& post, PlanePoint w);

/// Intermediate images of the three construction steps.
struct ProjectionStages {
  double sphere_latitude = 0.0;  // conformal latitude for spheroids
  double longitude_offset = 0.0;  // longitude relative to the central meridian
  PlanePoint stereographic;
  PlanePoint powered;
  PlanePoint image;
};

ProjectionStages project_stages(const LagrangeProjectionSpec& spec, const SpherePoint& p);
PlanePoint project(const LagrangeProjectionSpec& spec, const SpherePoint& p);
SpherePoint unproject(const LagrangeProjectionSpec& spec, PlanePoint q);

struct GraticuleCurve {
  enum class Family { meridian, parallel };

  std::string id;
  Family family = Family::meridian;
  double value = 0.0;  // longitude offset (meridians) or latitude (parallels), radians
  GeneralizedCircle circle = GeneralizedCircle::circle({0.0, 0.0}, 1.0);
  double rms_residual = 0.0;
  /// rms residual divided by the diagonal of the samples' bounding box.
  double relative_residual = 0.0;
  std::size_t samples = 0;
  std::size_t clipped = 0;
};

/// Samples every meridian (multiples of lon_step from the central meridian)
/// and parallel (multiples of lat_step) through `project` and fits a
/// generalized circle to each image. Samples within 1e-6 of a singular point
/// are clipped.
std::vector<GraticuleCurve> graticule_image(const LagrangeProjectionSpec& spec, double lat_step, double lon_step,
                                            std::size_t samples_per_curve);

}  // namespace carta
