#pragma once

#include <string>
#include <vector>

#include "carta/lagrange.hpp"

namespace carta::svg {

struct Bounds {
  double xmin = -1.0, xmax = 1.0, ymin = -1.0, ymax = 1.0;
};

struct Scene {
  Bounds bounds;
  std::vector<GraticuleCurve> curves;
  std::vector<std::vector<PlanePoint>> polylines;  // projected input features
  std::vector<PlanePoint> points;
  double residual_tolerance = 1e-9;
  bool timestamp = false;
};

/// SVG 1.1 document in plane units, y axis flipped so north is up. Graticule
/// curves are emitted as <circle> and <line> elements.
std::string render(const Scene& scene);

}  // namespace carta::svg
