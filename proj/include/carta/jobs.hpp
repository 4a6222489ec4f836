#pragma once

// Job orchestration behind the `carta` command line: GeoJSON in, GeoJSON /
// SVG / plain-text reports out. Config angles are degrees; everything handed
// to the library is radians.

#include <array>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "carta/geometry.hpp"
#include "carta/lagrange.hpp"

namespace carta {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitParse = 3,
  kExitDomain = 4,
  kExitConvergence = 5,
  kExitDegenerate = 6,
};

class JobFailure : public std::runtime_error {
 public:
  JobFailure(int code, const std::string& message) : std::runtime_error(message), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

struct JobConfig {
  std::string subcommand;

  std::vector<double> exponents{1.0};
  double central_meridian_deg = 0.0;
  std::optional<PlanePoint> inversion_pole;
  std::optional<double> inversion_power;
  std::optional<std::array<double, 8>> mobius;  // re/im of a, b, c, d
  double eccentricity = 0.0;

  std::optional<std::string> region;
  double delta_deg = 0.25;
  double lat_step_deg = 10.0;
  double lon_step_deg = 10.0;
  std::size_t samples_per_curve = 64;
  std::optional<std::array<double, 2>> aspect_center_deg;  // lat, lon
  std::size_t max_iterations = 1'000'000;                   // relaxation sweep cap

  std::optional<std::array<double, 6>> source;
  std::optional<std::array<double, 6>> target;
  bool unlabeled = false;
  bool negative_powers = false;

  std::optional<std::string> out;
  std::optional<std::string> svg;
  std::optional<std::string> report;
  std::optional<double> tolerance;
  bool svg_timestamp = false;
};

/// Checks every parameter against the library preconditions; throws
/// JobFailure(kExitConfig) on the first violation.
void validate(const JobConfig& config);

/// Builds the projection specs described by the config, one per exponent.
std::vector<LagrangeProjectionSpec> projection_specs(const JobConfig& config);

/// Validates, computes everything in memory, then writes the requested files
/// and prints the text report to `out`. Nothing is written when any step
/// fails; the failure is rethrown as JobFailure with the matching exit code.
void run_job(const JobConfig& config, std::ostream& out);

/// 15 significant digits, no negative zero.
std::string format_number(double value);

}  // namespace carta
