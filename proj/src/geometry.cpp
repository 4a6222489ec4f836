#include "carta/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

namespace carta {

namespace {

constexpr double kPoleTolerance = 1e-14;
constexpr double kLineCurvature = 1e-10;

std::string fmt_point(PlanePoint p) {
  return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
}

}  // namespace

double normalize_longitude(double lon) {
  double r = std::remainder(lon, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

double norm(PlanePoint p) { return std::hypot(p.x, p.y); }
double distance(PlanePoint a, PlanePoint b) { return norm(a - b); }

double norm(Vec3 v) { return std::sqrt(dot(v, v)); }

Vec3 normalized(Vec3 v) {
  const double n = norm(v);
  if (!(n > 0.0)) throw Error(ErrorKind::InvalidArgument, "cannot normalize a zero vector");
  return (1.0 / n) * v;
}

SpherePoint::SpherePoint(double latitude, double longitude) {
  if (!std::isfinite(latitude) || !std::isfinite(longitude))
    throw Error(ErrorKind::InvalidArgument, "non-finite sphere coordinates");
  if (std::abs(latitude) > kHalfPi + 1e-12)
    throw Error(ErrorKind::InvalidArgument, "latitude outside [-pi/2, pi/2]: " + std::to_string(latitude));
  lat_ = std::clamp(latitude, -kHalfPi, kHalfPi);
  lon_ = normalize_longitude(longitude);
}

SpherePoint SpherePoint::from_degrees(double lat_deg, double lon_deg) {
  return {deg_to_rad(lat_deg), deg_to_rad(lon_deg)};
}

SpherePoint SpherePoint::from_vector(Vec3 v) {
  const Vec3 u = normalized(v);
  return {std::atan2(u.z, std::hypot(u.x, u.y)), std::atan2(u.y, u.x)};
}

Vec3 SpherePoint::unit_vector() const {
  const double c = std::cos(lat_);
  return {c * std::cos(lon_), c * std::sin(lon_), std::sin(lat_)};
}

double chord_distance(const SpherePoint& a, const SpherePoint& b) {
  return norm(a.unit_vector() - b.unit_vector());
}

// --- GeneralizedCircle ----------------------------------------------------

GeneralizedCircle GeneralizedCircle::circle(PlanePoint center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius) || !std::isfinite(center.x) || !std::isfinite(center.y))
    throw Error(ErrorKind::InvalidArgument, "circle needs a finite center and positive radius");
  GeneralizedCircle g;
  g.kind_ = Kind::circle;
  g.center_ = center;
  g.radius_ = radius;
  return g;
}

GeneralizedCircle GeneralizedCircle::line(PlanePoint normal, double offset) {
  const double n = norm(normal);
  if (!(n > 0.0) || !std::isfinite(n) || !std::isfinite(offset))
    throw Error(ErrorKind::InvalidArgument, "line needs a nonzero normal");
  GeneralizedCircle g;
  g.kind_ = Kind::line;
  g.center_ = (1.0 / n) * normal;
  g.radius_ = offset / n;
  return g;
}

GeneralizedCircle GeneralizedCircle::line_through(PlanePoint p, PlanePoint q) {
  const PlanePoint dir = q - p;
  if (norm(dir) == 0.0) throw Error(ErrorKind::CoincidentPoints, "line through coincident points");
  const PlanePoint n{-dir.y, dir.x};
  return line(n, dot(n, p));
}

PlanePoint GeneralizedCircle::center() const {
  if (!is_circle()) throw Error(ErrorKind::InvalidArgument, "a line has no center");
  return center_;
}

double GeneralizedCircle::radius() const {
  if (!is_circle()) throw Error(ErrorKind::InvalidArgument, "a line has no radius");
  return radius_;
}

PlanePoint GeneralizedCircle::normal() const {
  if (!is_line()) throw Error(ErrorKind::InvalidArgument, "a circle has no normal");
  return center_;
}

double GeneralizedCircle::offset() const {
  if (!is_line()) throw Error(ErrorKind::InvalidArgument, "a circle has no offset");
  return radius_;
}

double GeneralizedCircle::distance(PlanePoint p) const {
  if (is_circle()) return std::abs(carta::distance(p, center_) - radius_);
  return std::abs(dot(center_, p) - radius_);
}

PlanePoint GeneralizedCircle::point_at(double t) const {
  if (is_circle()) return center_ + radius_ * PlanePoint{std::cos(t), std::sin(t)};
  return radius_ * center_ + t * PlanePoint{-center_.y, center_.x};
}

// --- Mobius ---------------------------------------------------------------

MobiusTransform::MobiusTransform(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw Error(ErrorKind::InvalidArgument, "Mobius coefficients must be finite and not all zero");
  // |det| after normalizing the largest coefficient to unit size
  if (std::abs(determinant()) / (scale * scale) <= 1e-12)
    throw Error(ErrorKind::InvalidArgument, "degenerate Mobius transform (ad - bc = 0)");
}

MobiusTransform::Complex MobiusTransform::apply(Complex z) const {
  const Complex den = c_ * z + d_;
  if (std::abs(den) < kPoleTolerance)
    throw Error(ErrorKind::PointAtInfinity,
                "Mobius transform sends " + fmt_point(PlanePoint(z)) + " to infinity");
  return (a_ * z + b_) / den;
}

MobiusTransform::Complex MobiusTransform::derivative(Complex z) const {
  const Complex den = c_ * z + d_;
  if (std::abs(den) < kPoleTolerance)
    throw Error(ErrorKind::PointAtInfinity, "Mobius derivative at the pole");
  return determinant() / (den * den);
}

MobiusTransform MobiusTransform::inverse() const { return {d_, -b_, -c_, a_}; }

MobiusTransform MobiusTransform::normalized() const {
  const Complex s = std::sqrt(determinant());
  return {a_ / s, b_ / s, c_ / s, d_ / s};
}

MobiusTransform compose(const MobiusTransform& f, const MobiusTransform& g) {
  return {f.a() * g.a() + f.b() * g.c(), f.a() * g.b() + f.b() * g.d(),
          f.c() * g.a() + f.d() * g.c(), f.c() * g.b() + f.d() * g.d()};
}

Inversion::Inversion(PlanePoint pole_, double power_) : pole(pole_), power(power_) {
  if (!(power_ != 0.0) || !std::isfinite(power_) || !std::isfinite(pole_.x) || !std::isfinite(pole_.y))
    throw Error(ErrorKind::InvalidArgument, "inversion needs a finite pole and nonzero power");
}

PlanePoint invert_point(const Inversion& inv, PlanePoint p) {
  const PlanePoint v = p - inv.pole;
  const double r2 = dot(v, v);
  if (std::sqrt(r2) < kPoleTolerance)
    throw Error(ErrorKind::PoleSingularity, "point " + fmt_point(p) + " is the inversion pole");
  return inv.pole + (inv.power / r2) * v;
}

PlanePoint mobius_apply(const MobiusTransform& m, PlanePoint z) { return PlanePoint(m.apply(z.complex())); }

// --- circle images ----------------------------------------------------------

GeneralizedCircle image_of_circle(const Inversion& inv, const GeneralizedCircle& c) {
  const PlanePoint pole = inv.pole;
  const double k = inv.power;
  if (c.is_circle()) {
    const PlanePoint to_center = c.center() - pole;
    const double d = norm(to_center);
    const double r = c.radius();
    if (std::abs(d - r) <= 1e-12 * std::max({1.0, d, r})) {
      // Through the pole: the farthest point P + 2r u maps to P + k/(2r) u.
      const PlanePoint u = (1.0 / d) * to_center;
      return GeneralizedCircle::line(u, dot(u, pole) + k / (2.0 * r));
    }
    const double denom = d * d - r * r;
    return GeneralizedCircle::circle(pole + (k / denom) * to_center, std::abs(k) * r / std::abs(denom));
  }
  const PlanePoint n = c.normal();
  const double delta = c.offset() - dot(n, pole);
  if (std::abs(delta) <= 1e-12 * std::max(1.0, norm(pole))) return c;
  return GeneralizedCircle::circle(pole + (k / (2.0 * delta)) * n, std::abs(k) / (2.0 * std::abs(delta)));
}

GeneralizedCircle image_of_circle(const MobiusTransform& m, const GeneralizedCircle& c) {
  using Complex = std::complex<double>;
  // Hermitian form A|z|^2 + B conj(z) + conj(B) z + C = 0.
  double A, C;
  Complex B;
  if (c.is_circle()) {
    const Complex z0 = c.center().complex();
    A = 1.0;
    B = -z0;
    C = std::norm(z0) - c.radius() * c.radius();
  } else {
    A = 0.0;
    B = 0.5 * c.normal().complex();
    C = -c.offset();
  }

  // The image contains infinity exactly when the curve passes through the
  // preimage of infinity, -d/c.
  bool image_is_line;
  if (std::abs(m.c()) <= 1e-14 * std::max(std::abs(m.a()), std::abs(m.d()))) {
    image_is_line = c.is_line();
  } else if (c.is_line()) {
    const PlanePoint z_inf(-m.d() / m.c());
    image_is_line = c.distance(z_inf) <= 1e-12 * std::max(1.0, norm(z_inf));
  } else {
    const PlanePoint z_inf(-m.d() / m.c());
    image_is_line = c.distance(z_inf) <= 1e-12 * std::max({1.0, norm(z_inf), c.radius()});
  }

  // H' = N^* H N with N = M^{-1} = [[d, -b], [-c, a]].
  const Complex n11 = m.d(), n12 = -m.b(), n21 = -m.c(), n22 = m.a();
  const Complex h11 = A, h12 = B, h21 = std::conj(B), h22 = C;
  const Complex hn11 = h11 * n11 + h12 * n21;
  const Complex hn12 = h11 * n12 + h12 * n22;
  const Complex hn21 = h21 * n11 + h22 * n21;
  const Complex hn22 = h21 * n12 + h22 * n22;
  const double A2 = (std::conj(n11) * hn11 + std::conj(n21) * hn21).real();
  const Complex B2 = std::conj(n11) * hn12 + std::conj(n21) * hn22;
  const double C2 = (std::conj(n12) * hn12 + std::conj(n22) * hn22).real();

  if (image_is_line) {
    const double bn = std::abs(B2);
    return GeneralizedCircle::line(PlanePoint(B2 / bn), -C2 / (2.0 * bn));
  }
  const Complex center = -B2 / A2;
  const double r2 = std::norm(center) - C2 / A2;
  return GeneralizedCircle::circle(PlanePoint(center), std::sqrt(std::max(r2, 0.0)));
}

// --- stereographic ------------------------------------------------------------

PlanePoint stereographic_project(const SpherePoint& p) {
  if (p.colatitude() < 1e-12)
    throw Error(ErrorKind::ProjectionPole, "the North pole has no stereographic image");
  const double rho = std::tan(kPi / 4.0 + p.latitude() / 2.0);
  return {rho * std::cos(p.longitude()), rho * std::sin(p.longitude())};
}

SpherePoint stereographic_unproject(PlanePoint q) {
  const double rho = norm(q);
  if (!std::isfinite(rho)) throw Error(ErrorKind::InvalidArgument, "non-finite plane point");
  return {2.0 * std::atan(rho) - kHalfPi, rho == 0.0 ? 0.0 : std::atan2(q.y, q.x)};
}

// --- spherical polygon area -----------------------------------------------------

double spherical_polygon_area(std::span<const SpherePoint> vertices) {
  std::vector<Vec3> v;
  v.reserve(vertices.size());
  for (const auto& p : vertices) v.push_back(p.unit_vector());
  if (v.size() >= 2 && norm(v.front() - v.back()) < 1e-15) v.pop_back();
  const std::size_t n = v.size();
  if (n < 3) throw Error(ErrorKind::DegeneratePolygon, "a spherical polygon needs at least 3 vertices");

  for (std::size_t i = 0; i < n; ++i) {
    if (norm(cross(v[i], v[(i + 1) % n])) < 1e-12)
      throw Error(ErrorKind::DegeneratePolygon,
                  "consecutive vertices " + std::to_string(i) + " and " + std::to_string((i + 1) % n) +
                      " are repeated or antipodal");
  }

  // Accumulate angle - pi per vertex so densely sampled outlines do not
  // lose digits against n pi.
  double excess = 2.0 * kPi;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& prev = v[(i + n - 1) % n];
    const Vec3& here = v[i];
    const Vec3& next = v[(i + 1) % n];
    // Tangent directions at `here` towards the neighbouring vertices.
    const Vec3 t_next = cross(cross(here, next), here);
    const Vec3 t_prev = cross(cross(here, prev), here);
    // Interior angle: counter-clockwise turn (about the outward normal) from
    // the outgoing edge to the incoming edge.
    double angle = std::atan2(dot(here, cross(t_next, t_prev)), dot(t_next, t_prev));
    if (angle <= 0.0) angle += 2.0 * kPi;
    excess += angle - kPi;
  }
  return excess;
}

// --- circle fit -----------------------------------------------------------------

CircleFit circle_fit(std::span<const PlanePoint> points) {
  const std::size_t n = points.size();
  if (n < 3) throw Error(ErrorKind::InsufficientPoints, "circle fit needs at least 3 points");

  PlanePoint mean{};
  for (const auto& p : points) mean = mean + p;
  mean = (1.0 / static_cast<double>(n)) * mean;
  double spread = 0.0;
  for (const auto& p : points) spread += dot(p - mean, p - mean);
  spread = std::sqrt(spread / static_cast<double>(n));
  if (!(spread > 0.0) || !std::isfinite(spread))
    throw Error(ErrorKind::InsufficientPoints, "circle fit points are coincident or non-finite");

  Eigen::MatrixXd Z(static_cast<Eigen::Index>(n), 4);
  for (std::size_t i = 0; i < n; ++i) {
    const PlanePoint u = (1.0 / spread) * (points[i] - mean);
    const auto row = static_cast<Eigen::Index>(i);
    Z(row, 0) = dot(u, u);
    Z(row, 1) = u.x;
    Z(row, 2) = u.y;
    Z(row, 3) = 1.0;
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Z, Eigen::ComputeThinV);
  const Eigen::Vector4d sigma = svd.singularValues();
  const Eigen::Matrix4d V = svd.matrixV();
  Eigen::Vector4d w;
  if (sigma(3) <= 1e-12 * sigma(0)) {
    w = V.col(3);
  } else {
    // Pratt's constraint D^2 + E^2 - 4AF = 1 via the SVD reduction.
    const Eigen::Matrix4d Y = V * sigma.asDiagonal() * V.transpose();
    Eigen::Matrix4d Binv = Eigen::Matrix4d::Zero();
    Binv(0, 3) = Binv(3, 0) = -0.5;
    Binv(1, 1) = Binv(2, 2) = 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(Y * Binv * Y);
    // In exact arithmetic the answer belongs to the smallest positive
    // eigenvalue, but for near-exact data that eigenvalue is at rounding
    // level and may come out with either sign. Score each candidate by
    // Pratt's objective |Z w|^2 / (D^2 + E^2 - 4AF) instead.
    double best = std::numeric_limits<double>::infinity();
    w = V.col(3);
    for (int i = 0; i < 4; ++i) {
      const Eigen::Vector4d cand = V * sigma.cwiseInverse().asDiagonal() * V.transpose() * eig.eigenvectors().col(i);
      const double constraint = cand(1) * cand(1) + cand(2) * cand(2) - 4.0 * cand(0) * cand(3);
      if (!(constraint > 0.0)) continue;
      const double objective = (Z * cand).squaredNorm() / constraint;
      if (objective < best) {
        best = objective;
        w = cand;
      }
    }
  }

  double A = w(0), D = w(1), E = w(2), F = w(3);
  const double disc = D * D + E * E - 4.0 * A * F;
  if (!(disc > 0.0)) throw Error(ErrorKind::InsufficientPoints, "circle fit is degenerate");
  const double s = 1.0 / std::sqrt(disc);
  A *= s;
  D *= s;
  E *= s;
  F *= s;

  const bool as_line = 2.0 * std::abs(A) < kLineCurvature;
  if (as_line) {
    const double dn = std::hypot(D, E);
    A = 0.0;
    D /= dn;
    E /= dn;
    F /= dn;
  }

  double sum_sq = 0.0;
  for (const auto& p : points) {
    const PlanePoint u = (1.0 / spread) * (p - mean);
    const double P = A * dot(u, u) + D * u.x + E * u.y + F;
    const double root = std::sqrt(std::max(0.0, 1.0 + 4.0 * A * P));
    const double d = 2.0 * P / (1.0 + root);
    sum_sq += d * d;
  }
  const double rms = spread * std::sqrt(sum_sq / static_cast<double>(n));

  if (as_line) {
    // D u + E v + F = 0 with u = (p - mean) / spread.
    const PlanePoint normal{D, E};
    return {GeneralizedCircle::line(normal, dot(normal, mean) - spread * F), rms};
  }
  const PlanePoint center = mean + spread * PlanePoint{-D / (2.0 * A), -E / (2.0 * A)};
  return {GeneralizedCircle::circle(center, spread / (2.0 * std::abs(A))), rms};
}

}  // namespace carta
