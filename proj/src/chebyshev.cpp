#include "carta/chebyshev.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <string>

namespace carta {

namespace {

// Tangent-plane (gnomonic) chart centred on the polygon; great-circle edges
// become straight segments.
struct GnomonicChart {
  Vec3 center, e1, e2;

  explicit GnomonicChart(Vec3 c) : center(normalized(c)) {
    const Vec3 helper = std::abs(center.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
    e1 = normalized(cross(helper, center));
    e2 = cross(center, e1);
  }

  std::optional<PlanePoint> chart(Vec3 v) const {
    const double d = dot(v, center);
    if (d <= 1e-9) return std::nullopt;
    return PlanePoint{dot(v, e1) / d, dot(v, e2) / d};
  }
};

double orient(PlanePoint a, PlanePoint b, PlanePoint c) { return cross(b - a, c - a); }

bool segments_cross(PlanePoint a, PlanePoint b, PlanePoint c, PlanePoint d) {
  const double o1 = orient(a, b, c), o2 = orient(a, b, d);
  const double o3 = orient(c, d, a), o4 = orient(c, d, b);
  return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

double segment_distance(PlanePoint p, PlanePoint a, PlanePoint b) {
  const PlanePoint ab = b - a;
  const double t = std::clamp(dot(p - a, ab) / dot(ab, ab), 0.0, 1.0);
  return distance(p, a + t * ab);
}

bool inside_polygon(PlanePoint p, const std::vector<PlanePoint>& poly) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const PlanePoint a = poly[i], b = poly[j];
    if (segment_distance(p, a, b) <= 1e-12 * std::max(1.0, norm(p))) return true;
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

struct PreparedBoundary {
  std::vector<SpherePoint> vertices;
  std::vector<Vec3> vectors;
  GnomonicChart chart;
  std::vector<PlanePoint> polygon;
};

PreparedBoundary prepare_boundary(std::span<const SpherePoint> boundary) {
  std::vector<SpherePoint> verts(boundary.begin(), boundary.end());
  if (verts.size() >= 2 && chord_distance(verts.front(), verts.back()) < 1e-12) verts.pop_back();
  if (verts.size() < 3) throw Error(ErrorKind::DegenerateBoundary, "region boundary needs at least 3 vertices");

  std::vector<Vec3> vecs;
  Vec3 sum{};
  for (const auto& v : verts) {
    vecs.push_back(v.unit_vector());
    sum = sum + vecs.back();
  }
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    if (norm(vecs[i] - vecs[(i + 1) % vecs.size()]) < 1e-12)
      throw Error(ErrorKind::DegenerateBoundary, "region boundary repeats a vertex");
  }
  if (norm(sum) < 1e-9) throw Error(ErrorKind::DegenerateBoundary, "region boundary has no well-defined centre");

  GnomonicChart chart(sum);
  std::vector<PlanePoint> poly;
  for (const auto& v : vecs) {
    const auto q = chart.chart(v);
    if (!q || dot(v, chart.center) < 0.1)
      throw Error(ErrorKind::InvalidArgument, "region must lie well inside one hemisphere");
    poly.push_back(*q);
  }

  double area2 = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) area2 += cross(poly[i], poly[(i + 1) % n]);
  if (std::abs(area2) < 1e-14) throw Error(ErrorKind::DegenerateBoundary, "region boundary encloses no area");

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_cross(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n]))
        throw Error(ErrorKind::SelfIntersectingBoundary,
                    "boundary edges " + std::to_string(i) + " and " + std::to_string(j) + " cross");
    }
  }
  return {std::move(verts), std::move(vecs), chart, std::move(poly)};
}

void check_spacing(double spacing) {
  if (!(spacing > 0.0) || spacing > 0.2) throw Error(ErrorKind::InvalidArgument, "mesh spacing must lie in (0, 0.2] rad");
}

// Grid points caught in a sharp corner of the polygon can form islands of
// boundary nodes with no interior neighbour; they carry only Dirichlet data
// and are dropped. Two islands that both contain interior nodes make the
// region disconnected.
void prune_and_require_connected(RegionMesh& mesh) {
  const std::size_t n = mesh.nodes.size();
  std::vector<int> component(n, -1);
  std::vector<bool> has_interior;
  for (std::size_t start = 0; start < n; ++start) {
    if (component[start] >= 0) continue;
    const int id = static_cast<int>(has_interior.size());
    has_interior.push_back(false);
    std::queue<std::size_t> todo;
    todo.push(start);
    component[start] = id;
    while (!todo.empty()) {
      const std::size_t k = todo.front();
      todo.pop();
      if (!mesh.nodes[k].boundary) has_interior.back() = true;
      for (int nb : mesh.nodes[k].neighbors) {
        if (nb >= 0 && component[static_cast<std::size_t>(nb)] < 0) {
          component[static_cast<std::size_t>(nb)] = id;
          todo.push(static_cast<std::size_t>(nb));
        }
      }
    }
  }
  if (std::count(has_interior.begin(), has_interior.end(), true) > 1)
    throw Error(ErrorKind::DisconnectedRegion, "region mesh is not connected");

  std::vector<int> remap(n, -1);
  std::vector<MeshNode> kept;
  for (std::size_t k = 0; k < n; ++k) {
    if (!has_interior[static_cast<std::size_t>(component[k])]) continue;
    remap[k] = static_cast<int>(kept.size());
    kept.push_back(mesh.nodes[k]);
  }
  for (MeshNode& node : kept)
    for (int& nb : node.neighbors)
      if (nb >= 0) nb = remap[static_cast<std::size_t>(nb)];
  mesh.nodes = std::move(kept);
}

constexpr std::size_t kMinInterior = 9;

}  // namespace

std::size_t RegionMesh::interior_count() const {
  return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const MeshNode& n) { return !n.boundary; }));
}

std::size_t RegionMesh::boundary_count() const { return nodes.size() - interior_count(); }

std::vector<SpherePoint> RegionMesh::points() const {
  std::vector<SpherePoint> pts;
  pts.reserve(nodes.size());
  for (const auto& n : nodes) pts.push_back(n.point);
  return pts;
}

bool is_geodesically_convex(std::span<const SpherePoint> boundary) {
  const PreparedBoundary b = prepare_boundary(boundary);
  const std::size_t n = b.polygon.size();
  int sign = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double turn = orient(b.polygon[i], b.polygon[(i + 1) % n], b.polygon[(i + 2) % n]);
    if (std::abs(turn) < 1e-15) continue;
    const int s = turn > 0 ? 1 : -1;
    if (sign == 0) sign = s;
    if (s != sign) return false;
  }
  return true;
}

RegionMesh build_polar_cap_mesh(double cap_radius, double spacing, bool south_cap) {
  check_spacing(spacing);
  if (!(cap_radius > 0.0 && cap_radius < kHalfPi))
    throw Error(ErrorKind::InvalidArgument, "polar cap radius must lie in (0, pi/2)");
  const int rings = std::max(1, static_cast<int>(std::ceil(cap_radius / spacing - 1e-9)));
  const double dr = cap_radius / rings;

  RegionMesh mesh;
  mesh.layout = RegionMesh::Layout::polar_cap;
  mesh.spacing = dr;
  mesh.south_cap = south_cap;
  mesh.cap_radius = cap_radius;

  const double sign = south_cap ? -1.0 : 1.0;
  std::vector<int> ring_start, ring_size;
  for (int i = 0; i <= rings; ++i) {
    const double r = i * dr;
    const int count = i == 0 ? 1 : std::max(4, static_cast<int>(std::lround(2.0 * kPi * std::sin(r) / dr)));
    ring_start.push_back(static_cast<int>(mesh.nodes.size()));
    ring_size.push_back(count);
    for (int j = 0; j < count; ++j) {
      MeshNode node;
      node.point = SpherePoint(sign * (kHalfPi - r), 2.0 * kPi * j / count);
      node.boundary = (i == rings);
      mesh.nodes.push_back(node);
      mesh.ring_of_node.push_back(i);
    }
  }
  // Radial neighbours are the nearest-longitude nodes of adjacent rings.
  auto nearest = [&](int ring, double lon) {
    const int count = ring_size[static_cast<std::size_t>(ring)];
    double t = lon / (2.0 * kPi);
    t -= std::floor(t);
    const int j = static_cast<int>(std::lround(t * count)) % count;
    return ring_start[static_cast<std::size_t>(ring)] + j;
  };
  for (int i = 0; i <= rings; ++i) {
    const int count = ring_size[static_cast<std::size_t>(i)];
    for (int j = 0; j < count; ++j) {
      MeshNode& node = mesh.nodes[static_cast<std::size_t>(ring_start[static_cast<std::size_t>(i)] + j)];
      const double lon = 2.0 * kPi * j / count;
      if (i == 0) {
        for (int d = 0; d < 4; ++d) node.neighbors[static_cast<std::size_t>(d)] = nearest(1, d * kHalfPi);
        continue;
      }
      const int out_dir = south_cap ? MeshNode::north : MeshNode::south;
      const int in_dir = south_cap ? MeshNode::south : MeshNode::north;
      node.neighbors[static_cast<std::size_t>(in_dir)] = nearest(i - 1, lon);
      if (i < rings) node.neighbors[static_cast<std::size_t>(out_dir)] = nearest(i + 1, lon);
      const int base = ring_start[static_cast<std::size_t>(i)];
      node.neighbors[MeshNode::east] = base + (j + 1) % count;
      node.neighbors[MeshNode::west] = base + (j + count - 1) % count;
    }
  }
  if (static_cast<std::size_t>(ring_start.back()) < kMinInterior)
    throw Error(ErrorKind::RegionTooSmall, "polar cap has fewer than 9 interior nodes");
  return mesh;
}

RegionMesh build_region_mesh(std::span<const SpherePoint> boundary, double spacing) {
  check_spacing(spacing);
  const PreparedBoundary b = prepare_boundary(boundary);

  for (double pole_sign : {-1.0, 1.0}) {
    const auto q = b.chart.chart(Vec3{0, 0, pole_sign});
    if (!q || !inside_polygon(*q, b.polygon)) continue;
    const double lat0 = b.vertices.front().latitude();
    const bool one_parallel = std::all_of(b.vertices.begin(), b.vertices.end(), [&](const SpherePoint& v) {
      return std::abs(v.latitude() - lat0) < 1e-9;
    });
    if (!one_parallel || lat0 * pole_sign <= 0.0)
      throw Error(ErrorKind::PoleInsideRegion, "a pole lies inside the region and the boundary is not a parallel");
    return build_polar_cap_mesh(kHalfPi - std::abs(lat0), spacing, pole_sign < 0.0);
  }

  // Bounding box from densely sampled edges; longitudes relative to the centre.
  const SpherePoint center = SpherePoint::from_vector(b.chart.center);
  double lat_min = kHalfPi, lat_max = -kHalfPi, off_min = kPi, off_max = -kPi;
  const std::size_t n = b.vectors.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 a = b.vectors[i], c = b.vectors[(i + 1) % n];
    for (int s = 0; s <= 64; ++s) {
      const SpherePoint p = SpherePoint::from_vector(a + (s / 64.0) * (c - a));
      lat_min = std::min(lat_min, p.latitude());
      lat_max = std::max(lat_max, p.latitude());
      const double off = normalize_longitude(p.longitude() - center.longitude());
      off_min = std::min(off_min, off);
      off_max = std::max(off_max, off);
    }
  }

  const int i0 = static_cast<int>(std::floor(lat_min / spacing)) - 1;
  const int i1 = static_cast<int>(std::ceil(lat_max / spacing)) + 1;
  const int j0 = static_cast<int>(std::floor((center.longitude() + off_min) / spacing)) - 1;
  const int j1 = static_cast<int>(std::ceil((center.longitude() + off_max) / spacing)) + 1;

  std::map<std::pair<int, int>, int> index;
  RegionMesh mesh;
  mesh.layout = RegionMesh::Layout::latlon_grid;
  mesh.spacing = spacing;
  for (int i = i0; i <= i1; ++i) {
    const double lat = i * spacing;
    if (std::abs(lat) >= kHalfPi) continue;
    for (int j = j0; j <= j1; ++j) {
      const SpherePoint p(lat, j * spacing);
      const auto q = b.chart.chart(p.unit_vector());
      if (!q || !inside_polygon(*q, b.polygon)) continue;
      index[{i, j}] = static_cast<int>(mesh.nodes.size());
      mesh.nodes.push_back({p, false, {-1, -1, -1, -1}});
    }
  }
  if (mesh.nodes.empty()) throw Error(ErrorKind::RegionTooSmall, "no grid node lies inside the region");

  for (const auto& [ij, k] : index) {
    const auto [i, j] = ij;
    MeshNode& node = mesh.nodes[static_cast<std::size_t>(k)];
    const std::array<std::pair<int, int>, 4> around{{{i + 1, j}, {i - 1, j}, {i, j + 1}, {i, j - 1}}};
    for (std::size_t d = 0; d < 4; ++d) {
      const auto it = index.find(around[d]);
      if (it == index.end()) {
        node.boundary = true;
      } else {
        node.neighbors[d] = it->second;
      }
    }
  }
  if (mesh.interior_count() < kMinInterior)
    throw Error(ErrorKind::RegionTooSmall, "region mesh has " + std::to_string(mesh.interior_count()) +
                                               " interior nodes, need at least 9");
  prune_and_require_connected(mesh);
  return mesh;
}

// --- solver -------------------------------------------------------------------

namespace {

// Radial problem (1/sin r)(sin r u')' = 1, u(R) = 0, finite volume on rings.
ScalarField solve_polar_cap(const RegionMesh& mesh) {
  const int rings = mesh.ring_of_node.back();
  const double dr = mesh.spacing;
  const std::size_t m = static_cast<std::size_t>(rings);  // unknowns u_0 .. u_{rings-1}

  std::vector<double> lower(m, 0.0), diag(m, 0.0), upper(m, 0.0), rhs(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double r = static_cast<double>(i) * dr;
    const double out = std::sin(r + 0.5 * dr) / dr;
    const double in = i == 0 ? 0.0 : std::sin(r - 0.5 * dr) / dr;
    const double area = i == 0 ? 1.0 - std::cos(0.5 * dr) : std::cos(r - 0.5 * dr) - std::cos(r + 0.5 * dr);
    diag[i] = -(out + in);
    upper[i] = out;
    lower[i] = in;
    rhs[i] = area;
  }
  // Thomas algorithm; u_rings = 0 so the last upper coefficient drops.
  std::vector<double> c(m, 0.0), d(m, 0.0), u(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double denom = diag[i] - (i == 0 ? 0.0 : lower[i] * c[i - 1]);
    c[i] = i + 1 < m ? upper[i] / denom : 0.0;
    d[i] = (rhs[i] - (i == 0 ? 0.0 : lower[i] * d[i - 1])) / denom;
  }
  for (std::size_t i = m; i-- > 0;) u[i] = d[i] - (i + 1 < m ? c[i] * u[i + 1] : 0.0);

  ScalarField field;
  double residual = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double flux = upper[i] * (u[i + 1] - u[i]) - (i == 0 ? 0.0 : lower[i] * (u[i] - u[i - 1]));
    residual = std::max(residual, std::abs(flux / rhs[i] - 1.0));
  }
  field.residual = residual;
  field.iterations = 1;
  field.values.reserve(mesh.nodes.size());
  for (int ring : mesh.ring_of_node) field.values.push_back(u[static_cast<std::size_t>(ring)]);
  return field;
}

struct Stencil {
  int node;
  double north, south, east_west;
  double diag;
  double rhs;
};

ScalarField solve_grid(const RegionMesh& mesh, const SolverOptions& options) {
  const double h2 = mesh.spacing * mesh.spacing;
  const std::size_t count = mesh.nodes.size();

  // Two-colouring of the bipartite stencil graph for red-black sweeps.
  std::vector<int> color(count, -1);
  for (std::size_t s = 0; s < count; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::queue<std::size_t> todo;
    todo.push(s);
    while (!todo.empty()) {
      const std::size_t k = todo.front();
      todo.pop();
      for (int nb : mesh.nodes[k].neighbors) {
        if (nb >= 0 && color[static_cast<std::size_t>(nb)] < 0) {
          color[static_cast<std::size_t>(nb)] = 1 - color[k];
          todo.push(static_cast<std::size_t>(nb));
        }
      }
    }
  }

  std::array<std::vector<Stencil>, 2> sweeps;
  // Extent of the grid in nodes sets the over-relaxation factor.
  const double lon_ref = mesh.nodes.front().point.longitude();
  long lat_lo = LONG_MAX, lat_hi = LONG_MIN, lon_lo = LONG_MAX, lon_hi = LONG_MIN;
  for (std::size_t k = 0; k < count; ++k) {
    const MeshNode& node = mesh.nodes[k];
    const long li = std::lround(node.point.latitude() / mesh.spacing);
    const long lj = std::lround(normalize_longitude(node.point.longitude() - lon_ref) / mesh.spacing);
    lat_lo = std::min(lat_lo, li);
    lat_hi = std::max(lat_hi, li);
    lon_lo = std::min(lon_lo, lj);
    lon_hi = std::max(lon_hi, lj);
    if (node.boundary) continue;
    const double lat = node.point.latitude();
    const double cl = std::cos(lat);
    Stencil s{static_cast<int>(k), std::cos(lat + 0.5 * mesh.spacing), std::cos(lat - 0.5 * mesh.spacing), 1.0 / cl,
              0.0, cl * h2};
    s.diag = s.north + s.south + 2.0 * s.east_west;
    sweeps[static_cast<std::size_t>(color[k])].push_back(s);
  }
  const double extent = static_cast<double>(std::max({lat_hi - lat_lo + 1, lon_hi - lon_lo + 1, 3L}));
  const double omega = 2.0 / (1.0 + std::sin(kPi / extent));

  ScalarField field;
  field.values.assign(count, 0.0);
  std::vector<double>& u = field.values;

  auto residual_norm = [&]() {
    double r = 0.0;
    for (const auto& sweep : sweeps) {
      for (const Stencil& s : sweep) {
        const auto& nb = mesh.nodes[static_cast<std::size_t>(s.node)].neighbors;
        const double uk = u[static_cast<std::size_t>(s.node)];
        const double lap =
            (s.north * (u[static_cast<std::size_t>(nb[0])] - uk) + s.south * (u[static_cast<std::size_t>(nb[1])] - uk) +
             s.east_west * (u[static_cast<std::size_t>(nb[2])] + u[static_cast<std::size_t>(nb[3])] - 2.0 * uk)) /
            s.rhs;
        r = std::max(r, std::abs(lap - 1.0));
      }
    }
    return r;
  };

  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    for (const auto& sweep : sweeps) {
      for (const Stencil& s : sweep) {
        const auto& nb = mesh.nodes[static_cast<std::size_t>(s.node)].neighbors;
        const double gs = (s.north * u[static_cast<std::size_t>(nb[0])] + s.south * u[static_cast<std::size_t>(nb[1])] +
                           s.east_west * (u[static_cast<std::size_t>(nb[2])] + u[static_cast<std::size_t>(nb[3])]) -
                           s.rhs) /
                          s.diag;
        double& uk = u[static_cast<std::size_t>(s.node)];
        uk += omega * (gs - uk);
      }
    }
    if (it % 16 == 0 || it == options.max_iterations) {
      field.residual = residual_norm();
      field.iterations = it;
      if (field.residual < options.residual_tolerance) return field;
    }
  }
  throw Error(ErrorKind::NoConvergence, "relaxation stopped at residual " + std::to_string(field.residual) +
                                            " after " + std::to_string(options.max_iterations) + " sweeps");
}

}  // namespace

ScalarField solve_log_scale(const RegionMesh& mesh, const SolverOptions& options) {
  if (mesh.nodes.empty()) throw Error(ErrorKind::RegionTooSmall, "empty mesh");
  if (mesh.layout == RegionMesh::Layout::polar_cap) return solve_polar_cap(mesh);
  return solve_grid(mesh, options);
}

double distortion_ratio(const ScalarField& field) {
  const auto [lo, hi] = std::minmax_element(field.values.begin(), field.values.end());
  return std::exp(*hi - *lo);
}

// --- comparison -----------------------------------------------------------------

SphereRotation SphereRotation::to_south_pole(const SpherePoint& center) {
  const Vec3 c = center.unit_vector();
  const Vec3 target{0.0, 0.0, -1.0};
  SphereRotation rot;
  const Vec3 axis = cross(c, target);
  const double s = norm(axis);
  const double cosang = dot(c, target);
  if (s < 1e-15) {
    if (cosang < 0.0) rot.rows_ = {Vec3{1, 0, 0}, Vec3{0, -1, 0}, Vec3{0, 0, -1}};
    return rot;
  }
  const Vec3 k = (1.0 / s) * axis;
  // Rodrigues: R = I cos + (1 - cos) k k^T + sin [k]_x
  const double one_c = 1.0 - cosang;
  rot.rows_ = {Vec3{cosang + one_c * k.x * k.x, one_c * k.x * k.y - s * k.z, one_c * k.x * k.z + s * k.y},
               Vec3{one_c * k.y * k.x + s * k.z, cosang + one_c * k.y * k.y, one_c * k.y * k.z - s * k.x},
               Vec3{one_c * k.z * k.x - s * k.y, one_c * k.z * k.y + s * k.x, cosang + one_c * k.z * k.z}};
  return rot;
}

SpherePoint SphereRotation::apply(const SpherePoint& p) const {
  const Vec3 v = p.unit_vector();
  return SpherePoint::from_vector({dot(rows_[0], v), dot(rows_[1], v), dot(rows_[2], v)});
}

std::string_view to_string(ChebyshevVerdict verdict) {
  switch (verdict) {
    case ChebyshevVerdict::optimal_matches_projection: return "optimal-matches-projection";
    case ChebyshevVerdict::projection_suboptimal: return "projection-suboptimal";
    case ChebyshevVerdict::optimality_violated: return "optimality-violated";
  }
  return "unknown";
}

ChebyshevComparison compare_with_projection(const RegionMesh& mesh, const ScalarField& field,
                                            const LagrangeProjectionSpec& spec, std::optional<SpherePoint> aspect_center,
                                            double allowance_coefficient) {
  if (!spec.surface().is_sphere())
    throw Error(ErrorKind::InvalidArgument, "the optimal-distortion comparison is defined on the sphere only");
  std::vector<SpherePoint> pts = mesh.points();
  if (aspect_center) {
    const SphereRotation rot = SphereRotation::to_south_pole(*aspect_center);
    for (auto& p : pts) p = rot.apply(p);
  }
  std::vector<double> m;
  m.reserve(pts.size());
  for (const auto& p : pts) {
    // For c != 1 the scale blows up at the projection's pole; a region
    // containing it has unbounded distortion.
    try {
      m.push_back(dilatation_analytic(spec, p));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::OriginSingularity) throw;
      m.push_back(std::numeric_limits<double>::infinity());
    }
  }
  const auto [lo, hi] = std::minmax_element(m.begin(), m.end());

  ChebyshevComparison out;
  out.ratio_optimal = distortion_ratio(field);
  out.ratio_projection = *hi / *lo;
  out.allowance = allowance_coefficient * mesh.spacing * mesh.spacing;
  if (out.ratio_optimal > out.ratio_projection + out.allowance) {
    out.verdict = ChebyshevVerdict::optimality_violated;
  } else if (out.ratio_projection > out.ratio_optimal + out.allowance) {
    out.verdict = ChebyshevVerdict::projection_suboptimal;
  } else {
    out.verdict = ChebyshevVerdict::optimal_matches_projection;
  }
  return out;
}

ChebyshevComparison chebyshev_vs_projection(const RegionMesh& mesh, const LagrangeProjectionSpec& spec,
                                            std::optional<SpherePoint> aspect_center, double allowance_coefficient) {
  return compare_with_projection(mesh, solve_log_scale(mesh), spec, aspect_center, allowance_coefficient);
}

}  // namespace carta
