#include "carta/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace carta {

namespace {

void check_step(double h) {
  if (!(h >= 1e-8 && h <= 1e-2)) throw Error(ErrorKind::InvalidArgument, "probe step must lie in [1e-8, 1e-2]");
}

PlanePoint probe(const SphereMap& map, const SpherePoint& p) {
  try {
    return map(p);
  } catch (const Error& e) {
    throw Error(ErrorKind::DomainEdge, std::string("probe left the map domain: ") + e.what());
  }
}

// Image-plane difference vectors for the meridian and parallel probes, and
// the surface arc lengths they span.
struct Probes {
  PlanePoint along_meridian;
  PlanePoint along_parallel;
  double meridian_arc = 0.0;
  double parallel_arc = 0.0;
};

Probes make_probes(const SphereMap& map, const SpherePoint& p, double h, const SurfaceOfRevolution& surface) {
  check_step(h);
  const double lat = p.latitude();
  const double lon = p.longitude();
  Probes pr;
  if (std::abs(lat) + h < kHalfPi) {
    pr.along_meridian = probe(map, {lat + h, lon}) - probe(map, {lat - h, lon});
    pr.along_parallel = probe(map, {lat, lon + h}) - probe(map, {lat, lon - h});
    pr.meridian_arc = 2.0 * h * surface.meridian_radius(lat);
    pr.parallel_arc = 2.0 * h * surface.parallel_radius(lat);
    return pr;
  }
  // Near a pole: great circles through p towards local north and east.
  const double c = std::cos(lat), s = std::sin(lat);
  const Vec3 here = p.unit_vector();
  const Vec3 north{-s * std::cos(lon), -s * std::sin(lon), c};
  const Vec3 east{-std::sin(lon), std::cos(lon), 0.0};
  auto walk = [&](const Vec3& dir, double t) {
    return SpherePoint::from_vector(std::cos(t) * here + std::sin(t) * dir);
  };
  pr.along_meridian = probe(map, walk(north, h)) - probe(map, walk(north, -h));
  pr.along_parallel = probe(map, walk(east, h)) - probe(map, walk(east, -h));
  const double clipped = std::clamp(lat, -(kHalfPi - kPoleClip), kHalfPi - kPoleClip);
  pr.meridian_arc = 2.0 * h * surface.meridian_radius(clipped);
  pr.parallel_arc = pr.meridian_arc;
  return pr;
}

}  // namespace

double DirectionalDilatation::mean() const { return std::sqrt(meridian * parallel); }

DirectionalDilatation directional_dilatation_fd(const SphereMap& map, const SpherePoint& p, double h,
                                                const SurfaceOfRevolution& surface) {
  const Probes pr = make_probes(map, p, h, surface);
  return {norm(pr.along_meridian) / pr.meridian_arc, norm(pr.along_parallel) / pr.parallel_arc};
}

double dilatation_fd(const SphereMap& map, const SpherePoint& p, double h, const SurfaceOfRevolution& surface) {
  return directional_dilatation_fd(map, p, h, surface).mean();
}

double dilatation_fd_richardson(const SphereMap& map, const SpherePoint& p, double h,
                                const SurfaceOfRevolution& surface) {
  const DirectionalDilatation coarse = directional_dilatation_fd(map, p, h, surface);
  const DirectionalDilatation fine = directional_dilatation_fd(map, p, 0.5 * h, surface);
  const DirectionalDilatation extrapolated{(4.0 * fine.meridian - coarse.meridian) / 3.0,
                                           (4.0 * fine.parallel - coarse.parallel) / 3.0};
  return extrapolated.mean();
}

double dilatation_analytic(const LagrangeProjectionSpec& spec, const SpherePoint& p) {
  const ProjectionStages st = project_stages(spec, p);

  double m = 1.0;
  const SurfaceOfRevolution& surface = spec.surface();
  if (!surface.is_sphere()) {
    double lat = std::clamp(p.latitude(), -(kHalfPi - kPoleClip), kHalfPi - kPoleClip);
    const double chi = conformal_latitude(surface.eccentricity(), lat);
    m *= std::cos(chi) / surface.parallel_radius(lat);
  }
  m *= 1.0 / (1.0 - std::sin(st.sphere_latitude));

  const double c = spec.exponent();
  if (c != 1.0) m *= c * std::pow(norm(st.stereographic), c - 1.0);

  const PostTransform& post = spec.post_transform();
  if (const auto* inv = std::get_if<Inversion>(&post)) {
    const PlanePoint v = st.powered - inv->pole;
    m *= std::abs(inv->power) / dot(v, v);
  } else if (const auto* mob = std::get_if<MobiusTransform>(&post)) {
    m *= std::abs(mob->derivative(st.powered.complex()));
  }
  return m;
}

double conformality_defect(const SphereMap& map, const SpherePoint& p, double h, const SurfaceOfRevolution& surface) {
  // Jacobian in orthonormal (north, east) surface coordinates, Richardson
  // extrapolated from steps h and h/2.
  const Probes coarse = make_probes(map, p, h, surface);
  const Probes fine = make_probes(map, p, 0.5 * h, surface);
  auto column = [](PlanePoint fine_d, double fine_arc, PlanePoint coarse_d, double coarse_arc) {
    return (4.0 / 3.0 / fine_arc) * fine_d - (1.0 / 3.0 / coarse_arc) * coarse_d;
  };
  const PlanePoint jm = column(fine.along_meridian, fine.meridian_arc, coarse.along_meridian, coarse.meridian_arc);
  const PlanePoint jp = column(fine.along_parallel, fine.parallel_arc, coarse.along_parallel, coarse.parallel_arc);
  const double j11 = jm.x, j21 = jm.y, j12 = jp.x, j22 = jp.y;
  const double e = 0.5 * (j11 + j22), f = 0.5 * (j11 - j22);
  const double g = 0.5 * (j21 + j12), hh = 0.5 * (j21 - j12);
  const double q = std::hypot(e, hh), r = std::hypot(f, g);
  const double a = q + r, b = std::abs(q - r);
  if (!(a > 0.0)) throw Error(ErrorKind::DomainEdge, "map is degenerate at the probe point");
  return 2.0 * std::asin(std::min(1.0, (a - b) / (a + b)));
}

namespace {

DistortionReport summarize(std::vector<DilatationSample> samples) {
  if (samples.empty()) throw Error(ErrorKind::EmptyRegion, "distortion report needs at least one sample");
  DistortionReport report;
  report.m_min = samples.front().m;
  report.m_max = samples.front().m;
  for (const auto& s : samples) {
    report.m_min = std::min(report.m_min, s.m);
    report.m_max = std::max(report.m_max, s.m);
  }
  report.ratio = report.m_max / report.m_min;
  report.samples = std::move(samples);
  return report;
}

std::optional<double> try_defect(const SphereMap& map, const SpherePoint& p, double h,
                                 const SurfaceOfRevolution& surface) {
  try {
    return conformality_defect(map, p, h, surface);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DomainEdge) return std::nullopt;
    throw;
  }
}

}  // namespace

SphereMap as_sphere_map(const LagrangeProjectionSpec& spec) {
  return [spec](const SpherePoint& p) { return project(spec, p); };
}

DistortionReport distortion_report(const LagrangeProjectionSpec& spec, std::span<const SpherePoint> points) {
  const SphereMap map = as_sphere_map(spec);
  std::vector<DilatationSample> samples;
  samples.reserve(points.size());
  for (const auto& p : points)
    samples.push_back({p, dilatation_analytic(spec, p), try_defect(map, p, kDefaultProbeStep, spec.surface())});
  return summarize(std::move(samples));
}

DistortionReport distortion_report(const SphereMap& map, std::span<const SpherePoint> points,
                                   const SurfaceOfRevolution& surface, double h) {
  std::vector<DilatationSample> samples;
  samples.reserve(points.size());
  for (const auto& p : points)
    samples.push_back({p, dilatation_fd(map, p, h, surface), try_defect(map, p, h, surface)});
  return summarize(std::move(samples));
}

}  // namespace carta
