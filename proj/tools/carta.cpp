// carta: command-line driver for the projection, distortion, Chebyshev and
// Darboux jobs.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "carta/jobs.hpp"

namespace {

template <std::size_t N>
std::array<double, N> parse_list(const std::string& flag, const std::string& text) {
  std::array<double, N> out{};
  std::stringstream ss(text);
  std::string item;
  std::size_t i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= N) break;
    std::size_t used = 0;
    try {
      out[i] = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
      throw carta::JobFailure(carta::kExitConfig, "config error: " + flag + " expects " + std::to_string(N) +
                                                      " comma-separated numbers, got '" + text + "'");
    }
    ++i;
  }
  if (i != N || std::getline(ss, item, ','))
    throw carta::JobFailure(carta::kExitConfig, "config error: " + flag + " expects " + std::to_string(N) +
                                                    " comma-separated numbers, got '" + text + "'");
  return out;
}

struct RawFlags {
  std::string pole, mobius, source, target, aspect;
};

void add_projection_options(CLI::App* sub, carta::JobConfig& c, RawFlags& raw, bool many_exponents) {
  if (many_exponents) {
    sub->add_option("--exponent", c.exponents, "Lagrange exponent c in (0, 2]; repeat to compare several")
        ->capture_default_str();
  } else {
    sub->add_option_function<double>(
           "--exponent", [&c](double v) { c.exponents = {v}; }, "Lagrange exponent c in (0, 2]")
        ->default_str("1");
  }
  sub->add_option("--central-meridian", c.central_meridian_deg, "central meridian, degrees")->capture_default_str();
  sub->add_option("--inversion-pole", raw.pole, "inversion pole x,y in the image plane");
  sub->add_option_function<double>(
      "--inversion-power", [&c](double v) { c.inversion_power = v; }, "inversion power k (non-zero)");
  sub->add_option("--mobius", raw.mobius, "Mobius post transform: re,im of a, b, c, d (8 numbers)");
  sub->add_option("--eccentricity", c.eccentricity, "spheroid eccentricity, 0 for the sphere")->capture_default_str();
}

void add_common_outputs(CLI::App* sub, carta::JobConfig& c) {
  sub->add_option_function<std::string>("--report", [&c](const std::string& v) { c.report = v; }, "text report path");
  sub->add_option_function<double>(
      "--tolerance", [&c](double v) { c.tolerance = v; },
      "residual tolerance (graticule, project) or allowance coefficient (chebyshev)");
}

}  // namespace

int main(int argc, char** argv) {
  carta::JobConfig config;
  RawFlags raw;

  CLI::App app{"carta: Lagrange conformal projections, distortion and Chebyshev optimality"};
  app.require_subcommand(1);

  auto region = [&](CLI::App* sub) {
    sub->add_option_function<std::string>(
        "--region", [&config](const std::string& v) { config.region = v; }, "GeoJSON input (lon, lat in degrees)");
  };
  auto out = [&](CLI::App* sub, const char* what) {
    sub->add_option_function<std::string>("--out", [&config](const std::string& v) { config.out = v; }, what);
  };
  auto svg = [&](CLI::App* sub) {
    sub->add_option_function<std::string>("--svg", [&config](const std::string& v) { config.svg = v; }, "SVG map path");
    sub->add_flag("--svg-timestamp", config.svg_timestamp, "stamp the SVG header with the current time");
  };
  auto graticule_steps = [&](CLI::App* sub) {
    sub->add_option("--lat-step", config.lat_step_deg, "parallel spacing, degrees")->capture_default_str();
    sub->add_option("--lon-step", config.lon_step_deg, "meridian spacing, degrees")->capture_default_str();
    sub->add_option("--samples", config.samples_per_curve, "samples per graticule curve")->capture_default_str();
  };

  auto* project = app.add_subcommand("project", "project a GeoJSON file and draw the graticule");
  add_projection_options(project, config, raw, false);
  region(project);
  out(project, "projected GeoJSON path");
  svg(project);
  graticule_steps(project);
  add_common_outputs(project, config);

  auto* graticule = app.add_subcommand("graticule", "fit circles to the images of meridians and parallels");
  add_projection_options(graticule, config, raw, false);
  svg(graticule);
  graticule_steps(graticule);
  add_common_outputs(graticule, config);

  auto* distortion = app.add_subcommand("distortion", "dilatation statistics over a region");
  add_projection_options(distortion, config, raw, false);
  region(distortion);
  distortion->add_option("--delta-deg", config.delta_deg, "sampling grid spacing, degrees")->capture_default_str();
  out(distortion, "GeoJSON of sampled dilatations");
  add_common_outputs(distortion, config);

  auto* chebyshev = app.add_subcommand("chebyshev", "optimal distortion ratio versus Lagrange projections");
  add_projection_options(chebyshev, config, raw, true);
  region(chebyshev);
  chebyshev->add_option("--delta-deg", config.delta_deg, "mesh spacing, degrees")->capture_default_str();
  chebyshev->add_option("--max-iterations", config.max_iterations, "relaxation sweep cap")->capture_default_str();
  chebyshev->add_option("--aspect-center", raw.aspect, "lat,lon of the projection centre for oblique aspects");
  out(chebyshev, "GeoJSON of the log-scale field");
  add_common_outputs(chebyshev, config);

  auto* darboux = app.add_subcommand("darboux", "find inversions carrying one triangle onto another");
  darboux->add_option("--source", raw.source, "x1,y1,x2,y2,x3,y3")->required();
  darboux->add_option("--target", raw.target, "x1,y1,x2,y2,x3,y3")->required();
  darboux->add_flag("--unlabeled", config.unlabeled, "match vertices in any order");
  darboux->add_flag("--negative-powers", config.negative_powers, "also list negative-power twins");
  add_common_outputs(darboux, config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return carta::kExitConfig;
  }

  try {
    config.subcommand = app.get_subcommands().front()->get_name();
    if (!raw.pole.empty()) {
      const auto p = parse_list<2>("--inversion-pole", raw.pole);
      config.inversion_pole = carta::PlanePoint{p[0], p[1]};
    }
    if (!raw.mobius.empty()) config.mobius = parse_list<8>("--mobius", raw.mobius);
    if (!raw.source.empty()) config.source = parse_list<6>("--source", raw.source);
    if (!raw.target.empty()) config.target = parse_list<6>("--target", raw.target);
    if (!raw.aspect.empty()) config.aspect_center_deg = parse_list<2>("--aspect-center", raw.aspect);
    carta::run_job(config, std::cout);
  } catch (const carta::JobFailure& e) {
    std::cerr << e.what() << "\n";
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return carta::kExitOk;
}
