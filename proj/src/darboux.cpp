#include "carta/darboux.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace carta {

namespace {

constexpr double kTangency = 1e-12;

// Candidate poles are polished by Newton's method on
//   |PA|^2 - l1^2 |PB|^2 = 0,  |PB|^2 - l2^2 |PC|^2 = 0.
PlanePoint polish_pole(PlanePoint p, const Triangle& t, double l1, double l2) {
  const PlanePoint A = t.a(), B = t.b(), C = t.c();
  const double l1s = l1 * l1, l2s = l2 * l2;
  for (int it = 0; it < 4; ++it) {
    const double f1 = dot(p - A, p - A) - l1s * dot(p - B, p - B);
    const double f2 = dot(p - B, p - B) - l2s * dot(p - C, p - C);
    const PlanePoint g1 = 2.0 * (p - A) - 2.0 * l1s * (p - B);
    const PlanePoint g2 = 2.0 * (p - B) - 2.0 * l2s * (p - C);
    const double det = cross(g1, g2);
    if (std::abs(det) < 1e-300) break;
    const PlanePoint step{(f1 * g2.y - f2 * g1.y) / det, (g1.x * f2 - g2.x * f1) / det};
    const PlanePoint next = p - step;
    if (!(std::isfinite(next.x) && std::isfinite(next.y))) break;
    p = next;
  }
  return p;
}

std::vector<Inversion> find_labeled(const Triangle& source, const Triangle& target, bool negative_twins) {
  const auto [a, b, c] = source.sides();
  const auto [a0, b0, c0] = target.sides();
  const double l1 = a0 * b / (a * b0);
  const double l2 = b0 * c / (b * c0);
  const GeneralizedCircle locus1 = apollonius_circle(source.a(), source.b(), l1);
  const GeneralizedCircle locus2 = apollonius_circle(source.b(), source.c(), l2);

  const double scale = std::max({a, b, c});
  std::vector<Inversion> out;
  for (PlanePoint pole : intersect(locus1, locus2)) {
    pole = polish_pole(pole, source, l1, l2);
    bool on_vertex = false;
    for (const auto& v : source.vertices()) on_vertex |= distance(pole, v) <= 1e-12 * scale;
    if (on_vertex) continue;
    const double power = a0 * distance(pole, source.b()) * distance(pole, source.c()) / a;
    const Inversion inv(pole, power);
    if (side_error(inv, source, target) > 1e-6) continue;
    out.push_back(inv);
    if (negative_twins) out.emplace_back(pole, -power);
  }
  return out;
}

}  // namespace

Triangle::Triangle(PlanePoint a, PlanePoint b, PlanePoint c) : v_{a, b, c} {
  for (const auto& p : v_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw Error(ErrorKind::InvalidArgument, "non-finite vertex");
  }
  const auto [sa, sb, sc] = sides();
  const double longest = std::max({sa, sb, sc});
  if (!(longest > 0.0) || std::abs(signed_area()) <= 1e-12 * std::max(1.0, longest * longest))
    throw Error(ErrorKind::DegenerateTriangle, "triangle vertices are collinear");
}

std::array<double, 3> Triangle::sides() const {
  return {distance(v_[1], v_[2]), distance(v_[2], v_[0]), distance(v_[0], v_[1])};
}

double Triangle::signed_area() const { return 0.5 * cross(v_[1] - v_[0], v_[2] - v_[0]); }

std::array<double, 3> image_triangle_sides(const Inversion& inv, const Triangle& t) {
  const double pa = distance(inv.pole, t.a()), pb = distance(inv.pole, t.b()), pc = distance(inv.pole, t.c());
  const auto [a, b, c] = t.sides();
  if (std::min({pa, pb, pc}) < 1e-14)
    throw Error(ErrorKind::PoleOnVertex, "inversion pole coincides with a triangle vertex");
  const double k = std::abs(inv.power);
  return {k * a / (pb * pc), k * b / (pc * pa), k * c / (pa * pb)};
}

GeneralizedCircle apollonius_circle(PlanePoint a, PlanePoint b, double ratio) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) throw Error(ErrorKind::InvalidArgument, "ratio must be positive");
  if (distance(a, b) == 0.0) throw Error(ErrorKind::CoincidentPoints, "Apollonius locus of coincident points");
  if (std::abs(ratio - 1.0) < 1e-12) return GeneralizedCircle::line(b - a, 0.5 * (dot(b, b) - dot(a, a)));
  const double r2 = ratio * ratio;
  const double denom = 1.0 - r2;
  return GeneralizedCircle::circle((1.0 / denom) * (a - r2 * b), ratio * distance(a, b) / std::abs(denom));
}

std::vector<PlanePoint> intersect(const GeneralizedCircle& first, const GeneralizedCircle& second) {
  if (first.is_line() && second.is_line()) {
    const PlanePoint n1 = first.normal(), n2 = second.normal();
    const double det = cross(n1, n2);
    if (std::abs(det) < 1e-14) return {};
    return {{(first.offset() * n2.y - second.offset() * n1.y) / det, (n1.x * second.offset() - n2.x * first.offset()) / det}};
  }
  if (first.is_line() != second.is_line()) {
    const GeneralizedCircle& line = first.is_line() ? first : second;
    const GeneralizedCircle& circ = first.is_line() ? second : first;
    const PlanePoint n = line.normal();
    const double delta = dot(n, circ.center()) - line.offset();
    const PlanePoint foot = circ.center() - delta * n;
    const double r = circ.radius();
    const double h2 = r * r - delta * delta;
    if (h2 < -kTangency * r * r) return {};
    if (h2 <= kTangency * r * r) return {foot};
    const double h = std::sqrt(h2);
    const PlanePoint t{-n.y, n.x};
    return {foot + h * t, foot - h * t};
  }
  // Radical-line construction for two circles.
  const PlanePoint c1 = first.center(), c2 = second.center();
  const double r1 = first.radius(), r2 = second.radius();
  const double d = distance(c1, c2);
  if (d < 1e-15 * std::max(r1, r2)) return {};
  const PlanePoint u = (1.0 / d) * (c2 - c1);
  const double along = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
  const double h2 = r1 * r1 - along * along;
  const double scale = std::min(r1, r2);
  const PlanePoint foot = c1 + along * u;
  if (h2 < -kTangency * scale * scale) return {};
  if (h2 <= kTangency * scale * scale) return {foot};
  const double h = std::sqrt(h2);
  const PlanePoint t{-u.y, u.x};
  return {foot + h * t, foot - h * t};
}

double side_error(const Inversion& inv, const Triangle& source, const Triangle& target) {
  std::array<PlanePoint, 3> img;
  for (std::size_t i = 0; i < 3; ++i) img[i] = invert_point(inv, source.vertices()[i]);
  const std::array<double, 3> got{distance(img[1], img[2]), distance(img[2], img[0]), distance(img[0], img[1])};
  const auto want = target.sides();
  double worst = 0.0;
  for (std::size_t i = 0; i < 3; ++i) worst = std::max(worst, std::abs(got[i] - want[i]) / want[i]);
  return worst;
}

std::vector<Inversion> find_inversion(const Triangle& source, const Triangle& target, InversionSearch options) {
  if (!options.unlabeled) return find_labeled(source, target, options.include_negative_powers);

  std::array<int, 3> order{0, 1, 2};
  std::vector<Inversion> all;
  const auto& tv = target.vertices();
  do {
    const Triangle permuted(tv[static_cast<std::size_t>(order[0])], tv[static_cast<std::size_t>(order[1])],
                            tv[static_cast<std::size_t>(order[2])]);
    for (const Inversion& inv : find_labeled(source, permuted, options.include_negative_powers)) {
      const bool seen = std::any_of(all.begin(), all.end(), [&](const Inversion& o) {
        return distance(o.pole, inv.pole) <= 1e-9 * std::max(1.0, norm(inv.pole)) &&
               std::abs(o.power - inv.power) <= 1e-9 * std::abs(inv.power);
      });
      if (!seen) all.push_back(inv);
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return all;
}

LagrangeConfiguration lagrange_constraints_to_triangles(PlanePoint base_a, PlanePoint base_b,
                                                        const std::array<double, 3>& ratios,
                                                        const std::array<double, 2>& angle_diffs, double free_angle) {
  const double base = distance(base_a, base_b);
  if (base == 0.0) throw Error(ErrorKind::CoincidentPoints, "the base AB is degenerate");
  const PlanePoint u = (1.0 / base) * (base_b - base_a);
  const PlanePoint v{-u.y, u.x};

  LagrangeConfiguration out;
  out.angles = {free_angle, free_angle + angle_diffs[0], free_angle + angle_diffs[1]};
  for (std::size_t i = 0; i < 3; ++i) {
    const double rho = ratios[i];
    const double gamma = out.angles[i];
    if (!(rho > 0.0) || !std::isfinite(rho)) throw Error(ErrorKind::InvalidArgument, "side ratios must be positive");
    // Every angle in (0, pi) is attained exactly once on the upper half of
    // the locus |RB| = rho |RA|.
    if (!(gamma > 0.0 && gamma < kPi))
      throw Error(ErrorKind::InfeasibleAngles, "angle BRA = " + std::to_string(gamma) +
                                                   " rad is not attainable on the Apollonius locus");
    const double ra = base / std::sqrt(1.0 + rho * rho - 2.0 * rho * std::cos(gamma));
    const double rb = rho * ra;
    const double along = (ra * ra + base * base - rb * rb) / (2.0 * base);
    const double height = std::sqrt(std::max(0.0, ra * ra - along * along));
    out.points[i] = base_a + along * u + height * v;
  }
  return out;
}

}  // namespace carta
