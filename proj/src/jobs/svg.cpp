#include "svg.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <sstream>

#include "carta/jobs.hpp"

namespace carta::svg {

namespace {

std::string n(double v) { return format_number(v); }

std::string residual_title(const GraticuleCurve& c) {
  return "<title>" + c.id + " relative residual " + n(c.relative_residual) + "</title>";
}

}  // namespace

std::string render(const Scene& scene) {
  const Bounds& b = scene.bounds;
  const double width = b.xmax - b.xmin, height = b.ymax - b.ymin;
  const double diag = std::hypot(width, height);
  const double stroke = diag / 800.0;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  if (scene.timestamp) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os << "<!-- generated " << buf << " -->\n";
  }
  // Plane coordinates are used directly with y negated.
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << n(b.xmin) << " " << n(-b.ymax) << " "
     << n(width) << " " << n(height) << "\" width=\"800\" height=\"" << n(800.0 * height / width) << "\">\n";

  double worst = 0.0;
  os << "  <g id=\"graticule\" fill=\"none\" stroke=\"#3465a4\" stroke-width=\"" << n(stroke) << "\">\n";
  for (const GraticuleCurve& c : scene.curves) {
    worst = std::max(worst, c.relative_residual);
    const char* family = c.family == GraticuleCurve::Family::meridian ? "meridian" : "parallel";
    if (c.circle.is_circle()) {
      const PlanePoint ctr = c.circle.center();
      os << "    <circle id=\"" << c.id << "\" class=\"" << family << "\" cx=\"" << n(ctr.x) << "\" cy=\"" << n(-ctr.y)
         << "\" r=\"" << n(c.circle.radius()) << "\" data-relative-residual=\"" << n(c.relative_residual) << "\">"
         << residual_title(c) << "</circle>\n";
    } else {
      const PlanePoint nrm = c.circle.normal();
      const PlanePoint mid{0.5 * (b.xmin + b.xmax), 0.5 * (b.ymin + b.ymax)};
      const PlanePoint foot = mid - (dot(nrm, mid) - c.circle.offset()) * nrm;
      const PlanePoint t{-nrm.y, nrm.x};
      const PlanePoint p0 = foot - diag * t, p1 = foot + diag * t;
      os << "    <line id=\"" << c.id << "\" class=\"" << family << "\" x1=\"" << n(p0.x) << "\" y1=\"" << n(-p0.y)
         << "\" x2=\"" << n(p1.x) << "\" y2=\"" << n(-p1.y) << "\" data-relative-residual=\""
         << n(c.relative_residual) << "\">" << residual_title(c) << "</line>\n";
    }
  }
  os << "  </g>\n";

  if (!scene.polylines.empty() || !scene.points.empty()) {
    os << "  <g id=\"features\" fill=\"none\" stroke=\"#cc0000\" stroke-width=\"" << n(stroke) << "\">\n";
    for (const auto& line : scene.polylines) {
      os << "    <polyline points=\"";
      for (std::size_t i = 0; i < line.size(); ++i) os << (i ? " " : "") << n(line[i].x) << "," << n(-line[i].y);
      os << "\"/>\n";
    }
    for (const PlanePoint& p : scene.points)
      os << "    <circle cx=\"" << n(p.x) << "\" cy=\"" << n(-p.y) << "\" r=\"" << n(2.0 * stroke)
         << "\" fill=\"#cc0000\"/>\n";
    os << "  </g>\n";
  }

  const double font = diag / 60.0;
  os << "  <text id=\"residual-summary\" x=\"" << n(b.xmin + font) << "\" y=\"" << n(-b.ymax + 1.5 * font)
     << "\" font-size=\"" << n(font) << "\" font-family=\"monospace\">" << scene.curves.size()
     << " curves, max relative residual " << n(worst) << (worst < scene.residual_tolerance ? " (pass)" : " (FAIL)")
     << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace carta::svg
