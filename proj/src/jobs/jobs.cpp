#include "carta/jobs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <utility>

#include "carta/chebyshev.hpp"
#include "carta/darboux.hpp"
#include "carta/distortion.hpp"
#include "geojson.hpp"
#include "svg.hpp"

namespace carta {

namespace {

using geojson::Json;

struct Outputs {
  std::vector<std::pair<std::string, std::string>> files;
  std::string report;
};

[[noreturn]] void config_failure(const std::string& what) { throw JobFailure(kExitConfig, "config error: " + what); }

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::RegionTooSmall:
      return kExitConfig;
    case ErrorKind::NoConvergence:
      return kExitConvergence;
    case ErrorKind::DegeneratePolygon:
    case ErrorKind::InsufficientPoints:
    case ErrorKind::EmptyRegion:
    case ErrorKind::SelfIntersectingBoundary:
    case ErrorKind::DegenerateBoundary:
    case ErrorKind::DisconnectedRegion:
    case ErrorKind::PoleInsideRegion:
    case ErrorKind::PoleOnVertex:
    case ErrorKind::CoincidentPoints:
    case ErrorKind::DegenerateTriangle:
    case ErrorKind::InfeasibleAngles:
      return kExitDegenerate;
    default:
      return kExitDomain;
  }
}

std::string degrees_pair(const SpherePoint& p) {
  return "[" + format_number(rad_to_deg(p.longitude())) + ", " + format_number(rad_to_deg(p.latitude())) + "]";
}

std::string describe(const LagrangeProjectionSpec& spec) {
  std::ostringstream os;
  os << "c=" << format_number(spec.exponent()) << " central_meridian=" << format_number(rad_to_deg(spec.central_meridian()));
  if (const auto* inv = std::get_if<Inversion>(&spec.post_transform())) {
    os << " post=inversion(pole=[" << format_number(inv->pole.x) << ", " << format_number(inv->pole.y)
       << "], power=" << format_number(inv->power) << ")";
  } else if (const auto* m = std::get_if<MobiusTransform>(&spec.post_transform())) {
    auto c = [](std::complex<double> z) { return "(" + format_number(z.real()) + "," + format_number(z.imag()) + ")"; };
    os << " post=mobius(" << c(m->a()) << ", " << c(m->b()) << ", " << c(m->c()) << ", " << c(m->d()) << ")";
  } else {
    os << " post=none";
  }
  os << " eccentricity=" << format_number(spec.surface().eccentricity());
  return os.str();
}

bool require_region(const JobConfig& c) {
  return c.subcommand == "project" || c.subcommand == "distortion" || c.subcommand == "chebyshev";
}

// --- plane bounds -------------------------------------------------------

void grow(svg::Bounds& b, PlanePoint p, bool& any) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) return;
  if (!any) {
    b = {p.x, p.x, p.y, p.y};
    any = true;
    return;
  }
  b.xmin = std::min(b.xmin, p.x);
  b.xmax = std::max(b.xmax, p.x);
  b.ymin = std::min(b.ymin, p.y);
  b.ymax = std::max(b.ymax, p.y);
}

svg::Bounds padded(svg::Bounds b) {
  const double w = b.xmax - b.xmin, h = b.ymax - b.ymin;
  const double span = std::max({w, h, 1e-6});
  const double cx = 0.5 * (b.xmin + b.xmax), cy = 0.5 * (b.ymin + b.ymax);
  const double hw = 0.55 * std::max(w, 0.2 * span), hh = 0.55 * std::max(h, 0.2 * span);
  return {cx - hw, cx + hw, cy - hh, cy + hh};
}

// Extent of the projected graticule between latitudes +-75 degrees.
svg::Bounds graticule_bounds(const LagrangeProjectionSpec& spec) {
  svg::Bounds b;
  bool any = false;
  const double half = spec.branch_half_width() * (1.0 - 1e-3);
  for (int i = -15; i <= 15; ++i) {
    for (int j = -36; j <= 36; ++j) {
      const double lon = spec.central_meridian() + half * j / 36.0;
      try {
        const PlanePoint q = project(spec, SpherePoint(deg_to_rad(5.0 * i), normalize_longitude(lon)));
        if (norm(q) < 1e3) grow(b, q, any);
      } catch (const Error&) {
      }
    }
  }
  if (!any) b = {-1.0, 1.0, -1.0, 1.0};
  return padded(b);
}

// Paths and isolated points of a projected GeoJSON document.
void collect_paths(const Json& node, std::vector<std::vector<PlanePoint>>& paths, std::vector<PlanePoint>& points) {
  if (!node.is_array() || node.empty()) return;
  if (node.front().is_number()) {
    points.push_back({node[0].get<double>(), node[1].get<double>()});
    return;
  }
  if (node.front().is_array() && !node.front().empty() && node.front().front().is_number()) {
    std::vector<PlanePoint> path;
    for (const auto& pos : node) path.push_back({pos[0].get<double>(), pos[1].get<double>()});
    paths.push_back(std::move(path));
    return;
  }
  for (const auto& child : node) collect_paths(child, paths, points);
}

void collect_geometry_paths(const Json& doc, std::vector<std::vector<PlanePoint>>& paths,
                            std::vector<PlanePoint>& points) {
  if (!doc.is_object()) return;
  if (doc.contains("features")) {
    for (const auto& f : doc["features"]) collect_geometry_paths(f, paths, points);
  } else if (doc.contains("geometry")) {
    collect_geometry_paths(doc["geometry"], paths, points);
  } else if (doc.contains("geometries")) {
    for (const auto& g : doc["geometries"]) collect_geometry_paths(g, paths, points);
  } else if (doc.contains("coordinates")) {
    collect_paths(doc["coordinates"], paths, points);
  }
}

double max_residual(const std::vector<GraticuleCurve>& curves) {
  double worst = 0.0;
  for (const auto& c : curves) worst = std::max(worst, c.relative_residual);
  return worst;
}

// --- subcommands --------------------------------------------------------

Outputs run_project(const JobConfig& config, const LagrangeProjectionSpec& spec) {
  const Json doc = geojson::read(*config.region);
  const Json mapped = geojson::map_positions(doc, [&](const SpherePoint& p) {
    try {
      return project(spec, p);
    } catch (const Error& e) {
      throw JobFailure(exit_code_for(e.kind()), "domain error at coordinate " + degrees_pair(p) + ": " + e.what());
    }
  });
  const auto curves = graticule_image(spec, deg_to_rad(config.lat_step_deg), deg_to_rad(config.lon_step_deg),
                                      config.samples_per_curve);
  const double tolerance = config.tolerance.value_or(1e-9);

  svg::Scene scene;
  scene.curves = curves;
  scene.residual_tolerance = tolerance;
  scene.timestamp = config.svg_timestamp;
  collect_geometry_paths(mapped, scene.polylines, scene.points);
  svg::Bounds b;
  bool any = false;
  for (const auto& path : scene.polylines)
    for (const auto& p : path) grow(b, p, any);
  for (const auto& p : scene.points) grow(b, p, any);
  scene.bounds = any ? padded(b) : graticule_bounds(spec);

  Outputs out;
  std::ostringstream r;
  r << "projection: " << describe(spec) << "\n";
  r << "positions projected: " << geojson::positions(doc).size() << "\n";
  r << "graticule curves: " << curves.size() << "\n";
  r << "max relative residual: " << format_number(max_residual(curves)) << "\n";
  out.report = r.str();
  if (config.out) out.files.emplace_back(*config.out, geojson::dump(mapped));
  if (config.svg) out.files.emplace_back(*config.svg, svg::render(scene));
  return out;
}

Outputs run_graticule(const JobConfig& config, const LagrangeProjectionSpec& spec) {
  const auto curves = graticule_image(spec, deg_to_rad(config.lat_step_deg), deg_to_rad(config.lon_step_deg),
                                      config.samples_per_curve);
  const double tolerance = config.tolerance.value_or(1e-9);
  std::size_t meridians = 0, parallels = 0, failing_m = 0, failing_p = 0;
  std::ostringstream r;
  r << "projection: " << describe(spec) << "\n";
  for (const auto& c : curves) {
    const bool meridian = c.family == GraticuleCurve::Family::meridian;
    const bool fail = !(c.relative_residual < tolerance);
    (meridian ? meridians : parallels) += 1;
    if (fail) (meridian ? failing_m : failing_p) += 1;
    r << c.id << " ";
    if (c.circle.is_circle()) {
      r << "circle center=[" << format_number(c.circle.center().x) << ", " << format_number(c.circle.center().y)
        << "] radius=" << format_number(c.circle.radius());
    } else {
      r << "line normal=[" << format_number(c.circle.normal().x) << ", " << format_number(c.circle.normal().y)
        << "] offset=" << format_number(c.circle.offset());
    }
    r << " relative_residual=" << format_number(c.relative_residual) << " samples=" << c.samples
      << " clipped=" << c.clipped << "\n";
  }
  r << "meridians: " << meridians << " (" << failing_m << " above tolerance)\n";
  r << "parallels: " << parallels << " (" << failing_p << " above tolerance)\n";
  r << "max relative residual: " << format_number(max_residual(curves)) << "\n";
  r << "verdict: " << (failing_m + failing_p == 0 ? "all curves are circles or lines" : "non-circular curves found")
    << "\n";

  Outputs out;
  out.report = r.str();
  if (config.svg) {
    svg::Scene scene;
    scene.curves = curves;
    scene.residual_tolerance = tolerance;
    scene.timestamp = config.svg_timestamp;
    scene.bounds = graticule_bounds(spec);
    out.files.emplace_back(*config.svg, svg::render(scene));
  }
  return out;
}

std::vector<SpherePoint> region_samples(const Json& doc, double spacing) {
  const auto ring = geojson::first_ring(doc);
  if (!ring.empty()) return build_region_mesh(ring, spacing).points();
  auto pts = geojson::positions(doc);
  if (pts.empty()) throw JobFailure(kExitParse, "parse error: the region file has no coordinates");
  return pts;
}

Outputs run_distortion(const JobConfig& config, const LagrangeProjectionSpec& spec) {
  const Json doc = geojson::read(*config.region);
  const auto points = region_samples(doc, deg_to_rad(config.delta_deg));
  DistortionReport report;
  try {
    report = distortion_report(spec, points);
  } catch (const Error& e) {
    throw JobFailure(exit_code_for(e.kind()), std::string("domain error: ") + e.what());
  }
  double worst_defect = 0.0;
  std::size_t defect_missing = 0;
  Json fc = {{"type", "FeatureCollection"}, {"features", Json::array()}};
  for (const auto& s : report.samples) {
    Json props = {{"m", s.m}, {"log_m", std::log(s.m)}};
    if (s.conformality_defect) {
      worst_defect = std::max(worst_defect, *s.conformality_defect);
      props["conformality_defect"] = *s.conformality_defect;
    } else {
      ++defect_missing;
      props["conformality_defect"] = nullptr;
    }
    fc["features"].push_back(geojson::point_feature(s.point, std::move(props)));
  }

  std::ostringstream r;
  r << "projection: " << describe(spec) << "\n";
  r << "samples: " << report.samples.size() << "\n";
  r << "m_min: " << format_number(report.m_min) << "\n";
  r << "m_max: " << format_number(report.m_max) << "\n";
  r << "ratio: " << format_number(report.ratio) << "\n";
  r << "max conformality defect: " << format_number(worst_defect) << " rad";
  if (defect_missing) r << " (" << defect_missing << " samples at the domain edge)";
  r << "\n";

  Outputs out;
  out.report = r.str();
  if (config.out) out.files.emplace_back(*config.out, geojson::dump(fc));
  return out;
}

Outputs run_chebyshev(const JobConfig& config, const std::vector<LagrangeProjectionSpec>& specs) {
  const Json doc = geojson::read(*config.region);
  const auto ring = geojson::first_ring(doc);
  if (ring.empty()) throw JobFailure(kExitParse, "parse error: the region file has no Polygon");
  const double spacing = deg_to_rad(config.delta_deg);
  const RegionMesh mesh = build_region_mesh(ring, spacing);
  SolverOptions solver;
  solver.max_iterations = config.max_iterations;
  const ScalarField field = solve_log_scale(mesh, solver);

  std::optional<SpherePoint> aspect;
  if (config.aspect_center_deg)
    aspect = SpherePoint::from_degrees((*config.aspect_center_deg)[0], (*config.aspect_center_deg)[1]);
  const double coefficient = config.tolerance.value_or(10.0);

  std::ostringstream r;
  r << "region: " << (mesh.layout == RegionMesh::Layout::polar_cap ? "polar cap" : "lat/lon grid") << ", "
    << mesh.interior_count() << " interior nodes, " << mesh.boundary_count() << " boundary nodes, spacing "
    << format_number(config.delta_deg) << " deg\n";
  r << "solver: residual " << format_number(field.residual) << " after " << field.iterations << " iterations\n";
  r << "ratio_optimal: " << format_number(distortion_ratio(field)) << "\n";
  if (aspect) r << "aspect center: " << degrees_pair(*aspect) << "\n";
  for (const auto& spec : specs) {
    ChebyshevComparison cmp;
    try {
      cmp = compare_with_projection(mesh, field, spec, aspect, coefficient);
    } catch (const Error& e) {
      throw JobFailure(exit_code_for(e.kind()), "projection " + describe(spec) + ": " + e.what());
    }
    r << "projection: " << describe(spec) << "\n";
    r << "  ratio_projection: " << format_number(cmp.ratio_projection) << "\n";
    r << "  gap: " << format_number(cmp.ratio_projection - cmp.ratio_optimal) << "\n";
    r << "  allowance: " << format_number(cmp.allowance) << "\n";
    r << "  verdict: " << to_string(cmp.verdict) << "\n";
  }

  Json fc = {{"type", "FeatureCollection"}, {"features", Json::array()}};
  for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
    fc["features"].push_back(
        geojson::point_feature(mesh.nodes[i].point, {{"u", field.values[i]}, {"boundary", mesh.nodes[i].boundary}}));
  }

  Outputs out;
  out.report = r.str();
  if (config.out) out.files.emplace_back(*config.out, geojson::dump(fc));
  return out;
}

Outputs run_darboux(const JobConfig& config) {
  const auto& s = *config.source;
  const auto& t = *config.target;
  const Triangle source({s[0], s[1]}, {s[2], s[3]}, {s[4], s[5]});
  const Triangle target({t[0], t[1]}, {t[2], t[3]}, {t[4], t[5]});
  const auto found = find_inversion(source, target, {config.unlabeled, config.negative_powers});

  std::ostringstream r;
  if (found.empty()) {
    r << "no inversion exists\n";
  } else {
    r << "inversions: " << found.size() << "\n";
    for (const auto& inv : found) {
      r << "pole=[" << format_number(inv.pole.x) << ", " << format_number(inv.pole.y)
        << "] power=" << format_number(inv.power) << " side_error=" << format_number(side_error(inv, source, target))
        << "\n";
    }
  }
  Outputs out;
  out.report = r.str();
  return out;
}

void write_all(const Outputs& outputs, const JobConfig& config) {
  std::vector<std::pair<std::string, std::string>> files = outputs.files;
  if (config.report) files.emplace_back(*config.report, outputs.report);
  for (const auto& [path, content] : files) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) config_failure("cannot write '" + path + "'");
    f << content;
  }
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return buf;
}

void validate(const JobConfig& c) {
  static const std::vector<std::string> known{"project", "graticule", "distortion", "chebyshev", "darboux"};
  if (std::find(known.begin(), known.end(), c.subcommand) == known.end())
    config_failure("unknown subcommand '" + c.subcommand + "'");

  if (c.exponents.empty()) config_failure("--exponent is required");
  if (c.exponents.size() > 1 && c.subcommand != "chebyshev")
    config_failure("only the chebyshev subcommand accepts several exponents");
  for (double e : c.exponents)
    if (!(e > 0.0 && e <= 2.0)) config_failure("--exponent " + format_number(e) + " is outside (0, 2]");
  if (!std::isfinite(c.central_meridian_deg) || std::abs(c.central_meridian_deg) > 180.0)
    config_failure("--central-meridian must lie in [-180, 180]");
  if (c.inversion_power && !(std::isfinite(*c.inversion_power) && *c.inversion_power != 0.0))
    config_failure("--inversion-power must be finite and non-zero");
  if (c.inversion_pole && !(std::isfinite(c.inversion_pole->x) && std::isfinite(c.inversion_pole->y)))
    config_failure("--inversion-pole must be finite");
  if ((c.inversion_pole || c.inversion_power) && c.mobius)
    config_failure("--mobius cannot be combined with an inversion");
  if (c.mobius) {
    const auto& m = *c.mobius;
    try {
      MobiusTransform({m[0], m[1]}, {m[2], m[3]}, {m[4], m[5]}, {m[6], m[7]});
    } catch (const Error& e) {
      config_failure(std::string("--mobius: ") + e.what());
    }
  }
  if (!(c.eccentricity >= 0.0 && c.eccentricity < 1.0)) config_failure("--eccentricity must lie in [0, 1)");
  if (c.subcommand == "chebyshev" && c.eccentricity != 0.0)
    config_failure("the chebyshev comparison is defined on the sphere only");

  if (require_region(c) && !c.region) config_failure("--region is required for " + c.subcommand);
  if (!(c.delta_deg > 0.0) || deg_to_rad(c.delta_deg) > 0.2) config_failure("--delta-deg must lie in (0, 11.459]");
  if (!(c.lat_step_deg > 0.0 && c.lat_step_deg <= 90.0)) config_failure("--lat-step must lie in (0, 90]");
  if (!(c.lon_step_deg > 0.0 && c.lon_step_deg <= 180.0)) config_failure("--lon-step must lie in (0, 180]");
  if (c.samples_per_curve < 8) config_failure("--samples must be at least 8");
  if (c.max_iterations < 1) config_failure("--max-iterations must be positive");
  if (c.tolerance && !(std::isfinite(*c.tolerance) && *c.tolerance > 0.0))
    config_failure("--tolerance must be positive");
  if (c.aspect_center_deg) {
    const auto& a = *c.aspect_center_deg;
    if (!(std::abs(a[0]) <= 90.0 && std::abs(a[1]) <= 180.0)) config_failure("--aspect-center is out of range");
  }
  if (c.subcommand == "darboux") {
    if (!c.source || !c.target) config_failure("darboux needs --source and --target");
    for (const auto* tri : {&*c.source, &*c.target})
      for (double v : *tri)
        if (!std::isfinite(v)) config_failure("triangle coordinates must be finite");
  }
}

std::vector<LagrangeProjectionSpec> projection_specs(const JobConfig& c) {
  PostTransform post;
  if (c.inversion_pole || c.inversion_power)
    post = Inversion(c.inversion_pole.value_or(PlanePoint{0.0, 0.0}), c.inversion_power.value_or(1.0));
  if (c.mobius) {
    const auto& m = *c.mobius;
    post = MobiusTransform({m[0], m[1]}, {m[2], m[3]}, {m[4], m[5]}, {m[6], m[7]});
  }
  const SurfaceOfRevolution surface =
      c.eccentricity == 0.0 ? SurfaceOfRevolution::sphere() : SurfaceOfRevolution::spheroid(c.eccentricity);
  std::vector<LagrangeProjectionSpec> specs;
  for (double e : c.exponents) specs.emplace_back(e, deg_to_rad(c.central_meridian_deg), post, surface);
  return specs;
}

void run_job(const JobConfig& config, std::ostream& out) {
  validate(config);
  Outputs outputs;
  try {
    const auto specs = projection_specs(config);
    if (config.subcommand == "project") outputs = run_project(config, specs.front());
    else if (config.subcommand == "graticule") outputs = run_graticule(config, specs.front());
    else if (config.subcommand == "distortion") outputs = run_distortion(config, specs.front());
    else if (config.subcommand == "chebyshev") outputs = run_chebyshev(config, specs);
    else outputs = run_darboux(config);
  } catch (const Error& e) {
    throw JobFailure(exit_code_for(e.kind()), e.what());
  }
  write_all(outputs, config);
  out << outputs.report;
}

}  // namespace carta
