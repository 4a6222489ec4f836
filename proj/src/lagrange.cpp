#include "carta/lagrange.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace carta {

namespace {

constexpr double kSingularClip = 1e-6;

std::string describe(const SpherePoint& p) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(lat %.9g deg, lon %.9g deg)", rad_to_deg(p.latitude()),
                rad_to_deg(p.longitude()));
  return buf;
}

std::string curve_id(const char* family, double radians) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s:%.6g", family, rad_to_deg(radians));
  return buf;
}

// Distance from z to the point the post transform sends to infinity.
double distance_to_post_singularity(const PostTransform& post, PlanePoint z) {
  if (const auto* inv = std::get_if<Inversion>(&post)) return distance(z, inv->pole);
  if (const auto* m = std::get_if<MobiusTransform>(&post)) {
    if (std::abs(m->c()) == 0.0) return std::numeric_limits<double>::infinity();
    return distance(z, PlanePoint(-m->d() / m->c()));
  }
  return std::numeric_limits<double>::infinity();
}

double bounding_diagonal(const std::vector<PlanePoint>& pts) {
  double xmin = pts.front().x, xmax = xmin, ymin = pts.front().y, ymax = ymin;
  for (const auto& p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  return std::hypot(xmax - xmin, ymax - ymin);
}

}  // namespace

LagrangeProjectionSpec::LagrangeProjectionSpec(double exponent, double central_meridian, PostTransform post,
                                               SurfaceOfRevolution surface)
    : exponent_(exponent),
      central_meridian_(normalize_longitude(central_meridian)),
      post_(std::move(post)),
      surface_(surface) {
  if (!(exponent > 0.0 && exponent <= 2.0))
    throw Error(ErrorKind::InvalidArgument, "projection exponent must lie in (0, 2]");
  if (!std::isfinite(central_meridian)) throw Error(ErrorKind::InvalidArgument, "non-finite central meridian");
}

double LagrangeProjectionSpec::branch_half_width() const { return std::min(kPi, kPi / exponent_); }

PlanePoint lambert_power(PlanePoint z, double c) {
  const double rho = norm(z);
  if (c == 1.0) return z;
  if (rho < 1e-14) throw Error(ErrorKind::OriginSingularity, "power map is singular at the origin");
  double omega = std::atan2(z.y, z.x);
  if (omega == -kPi) omega = kPi;
  const double r = std::pow(rho, c);
  return {r * std::cos(c * omega), r * std::sin(c * omega)};
}

PlanePoint inverse_lambert_power(PlanePoint w, double c) {
  if (c == 1.0) return w;
  const double rho = norm(w);
  if (rho == 0.0) return {0.0, 0.0};
  double omega = std::atan2(w.y, w.x);
  if (omega == -kPi) omega = kPi;
  if (std::abs(omega) > c * kPi * (1.0 + 1e-12))
    throw Error(ErrorKind::OutsideImage, "plane point lies outside the power-map wedge");
  const double r = std::pow(rho, 1.0 / c);
  return {r * std::cos(omega / c), r * std::sin(omega / c)};
}

PlanePoint apply_post_transform(const PostTransform& post, PlanePoint z) {
  if (const auto* inv = std::get_if<Inversion>(&post)) return invert_point(*inv, z);
  if (const auto* m = std::get_if<MobiusTransform>(&post)) return mobius_apply(*m, z);
  return z;
}

PlanePoint invert_post_transform(const PostTransform& post, PlanePoint w) {
  if (const auto* inv = std::get_if<Inversion>(&post)) return invert_point(*inv, w);
  if (const auto* m = std::get_if<MobiusTransform>(&post)) return mobius_apply(m->inverse(), w);
  return w;
}

ProjectionStages project_stages(const LagrangeProjectionSpec& spec, const SpherePoint& p) {
  ProjectionStages st;
  const double offset = normalize_longitude(p.longitude() - spec.central_meridian());
  const double c = spec.exponent();
  if (c * offset > kPi || c * offset <= -kPi)
    throw Error(ErrorKind::BranchOverflow, "longitude outside the single-branch window at " + describe(p));
  st.longitude_offset = offset;

  double lat = p.latitude();
  if (!spec.surface().is_sphere() && std::abs(lat) < kHalfPi)
    lat = conformal_latitude(spec.surface().eccentricity(), lat);
  st.sphere_latitude = lat;

  try {
    // Stereographic step with the offset longitude used directly.
    const SpherePoint recentred(lat, offset);
    st.stereographic = stereographic_project(recentred);
    if (c == 1.0) {
      st.powered = st.stereographic;
    } else {
      const double rho = norm(st.stereographic);
      if (rho < 1e-14) throw Error(ErrorKind::OriginSingularity, "power map is singular at the South pole");
      const double r = std::pow(rho, c);
      st.powered = {r * std::cos(c * offset), r * std::sin(c * offset)};
    }
    st.image = apply_post_transform(spec.post_transform(), st.powered);
  } catch (const Error& e) {
    throw Error(e.kind(), e.detail() + " at " + describe(p));
  }
  return st;
}

PlanePoint project(const LagrangeProjectionSpec& spec, const SpherePoint& p) { return project_stages(spec, p).image; }

SpherePoint unproject(const LagrangeProjectionSpec& spec, PlanePoint q) {
  const PlanePoint powered = invert_post_transform(spec.post_transform(), q);
  const PlanePoint stereo = inverse_lambert_power(powered, spec.exponent());
  const SpherePoint local = stereographic_unproject(stereo);
  double lat = local.latitude();
  if (!spec.surface().is_sphere() && std::abs(lat) < kHalfPi)
    lat = geodetic_from_conformal(spec.surface().eccentricity(), lat);
  return {lat, local.longitude() + spec.central_meridian()};
}

std::vector<GraticuleCurve> graticule_image(const LagrangeProjectionSpec& spec, double lat_step, double lon_step,
                                            std::size_t samples_per_curve) {
  if (!(lat_step > 0.0) || !(lon_step > 0.0))
    throw Error(ErrorKind::InvalidArgument, "graticule steps must be positive");
  if (samples_per_curve < 8) throw Error(ErrorKind::InvalidArgument, "need at least 8 samples per curve");

  const double window = spec.branch_half_width();
  const double lat_limit = kHalfPi - kSingularClip;

  std::vector<double> parallels;
  for (int k = -static_cast<int>(std::floor(kHalfPi / lat_step)); k * lat_step <= kHalfPi; ++k) {
    const double lat = k * lat_step;
    if (std::abs(lat) < lat_limit) parallels.push_back(lat);
  }
  std::vector<double> meridians;
  for (int k = -static_cast<int>(std::floor(window / lon_step)); k * lon_step <= window * (1.0 + 1e-12); ++k) {
    const double off = std::min(k * lon_step, window);
    if (off > -window) meridians.push_back(off);
  }
  if (parallels.size() < 2 || meridians.size() < 2)
    throw Error(ErrorKind::InvalidArgument, "graticule steps must give at least 2 curves per family");

  const auto n = static_cast<double>(samples_per_curve);
  std::vector<GraticuleCurve> curves;
  auto trace = [&](GraticuleCurve::Family family, double value) {
    GraticuleCurve curve;
    curve.family = family;
    curve.value = value;
    curve.id = curve_id(family == GraticuleCurve::Family::meridian ? "meridian" : "parallel", value);
    std::vector<PlanePoint> pts;
    for (std::size_t i = 0; i < samples_per_curve; ++i) {
      const double t = (static_cast<double>(i) + 0.5) / n;
      const SpherePoint p = family == GraticuleCurve::Family::meridian
                                ? SpherePoint(-kHalfPi + t * kPi, spec.central_meridian() + value)
                                : SpherePoint(value, spec.central_meridian() - window + t * 2.0 * window);
      try {
        const ProjectionStages st = project_stages(spec, p);
        if (distance_to_post_singularity(spec.post_transform(), st.powered) < kSingularClip) {
          ++curve.clipped;
          continue;
        }
        pts.push_back(st.image);
      } catch (const Error&) {
        ++curve.clipped;
      }
    }
    if (pts.size() < 3) return;  // the whole curve was clipped
    const CircleFit fit = circle_fit(pts);
    curve.circle = fit.circle;
    curve.rms_residual = fit.rms_residual;
    const double diag = bounding_diagonal(pts);
    curve.relative_residual = diag > 0.0 ? fit.rms_residual / diag : 0.0;
    curve.samples = pts.size();
    curves.push_back(std::move(curve));
  };

  for (double off : meridians) trace(GraticuleCurve::Family::meridian, off);
  for (double lat : parallels) trace(GraticuleCurve::Family::parallel, lat);
  return curves;
}

}  // namespace carta
