#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "carta/geometry.hpp"

using namespace carta;

namespace {

// Intersect the ray from the North pole through p with the plane z = 0.
PlanePoint ray_plane_oracle(const SpherePoint& p) {
  const Vec3 n{0.0, 0.0, 1.0};
  const Vec3 v = p.unit_vector();
  const double t = n.z / (n.z - v.z);
  const Vec3 hit = n + t * (v - n);
  return {hit.x, hit.y};
}

// Signed area between the equator, two meridians dlon apart and the great
// circle joining (phi1, 0) to (phi2, dlon).
double equator_strip(double phi1, double phi2, double dlon) {
  const double t1 = std::tan(phi1 / 2.0), t2 = std::tan(phi2 / 2.0);
  return 2.0 * std::atan(std::tan(dlon / 2.0) * (t1 + t2) / (1.0 + t1 * t2));
}

double trapezoid_oracle(double phi1, double phi2, double dlon) {
  return equator_strip(phi2, phi2, dlon) - equator_strip(phi1, phi1, dlon);
}

SpherePoint deg(double lat, double lon) { return SpherePoint::from_degrees(lat, lon); }

}  // namespace

TEST(Inversion, Examples) {
  const Inversion unit({0.0, 0.0}, 1.0);
  const PlanePoint a = invert_point(unit, {2.0, 0.0});
  EXPECT_NEAR(a.x, 0.5, 1e-15);
  EXPECT_NEAR(a.y, 0.0, 1e-15);
  const PlanePoint b = invert_point(unit, {1.0, 0.0});
  EXPECT_NEAR(b.x, 1.0, 1e-15);
}

TEST(Inversion, IsAnInvolution) {
  const Inversion inv({1.0, 1.0}, 2.0);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const PlanePoint p{u(rng), u(rng)};
    if (distance(p, inv.pole) < 1e-3) continue;
    EXPECT_LT(distance(invert_point(inv, invert_point(inv, p)), p), 1e-12 * std::max(1.0, norm(p)));
  }
}

TEST(Inversion, PoleIsSingular) {
  const Inversion inv({1.0, 1.0}, 2.0);
  try {
    invert_point(inv, {1.0, 1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PoleSingularity);
  }
  EXPECT_THROW(Inversion({0.0, 0.0}, 0.0), Error);
}

TEST(Mobius, Examples) {
  const PlanePoint z = mobius_apply(MobiusTransform::identity(), {3.0, 4.0});
  EXPECT_EQ(z.x, 3.0);
  EXPECT_EQ(z.y, 4.0);
  const PlanePoint w = mobius_apply(MobiusTransform(0.0, 1.0, 1.0, 0.0), {2.0, 0.0});
  EXPECT_NEAR(w.x, 0.5, 1e-15);
  EXPECT_NEAR(w.y, 0.0, 1e-15);
  EXPECT_THROW(MobiusTransform(1.0, 2.0, 2.0, 4.0), Error);
}

TEST(Mobius, ComposeAndInverse) {
  const MobiusTransform f({1.0, 2.0}, {0.5, 0.0}, {0.1, -0.2}, {1.0, 0.0});
  const MobiusTransform g({2.0, 0.0}, {0.0, 1.0}, {0.0, 0.3}, {1.0, 1.0});
  const std::complex<double> z(0.3, -0.7);
  EXPECT_LT(std::abs(compose(f, g).apply(z) - f.apply(g.apply(z))), 1e-13);
  EXPECT_LT(std::abs(f.inverse().apply(f.apply(z)) - z), 1e-13);
  EXPECT_NEAR(std::abs(f.normalized().determinant()), 1.0, 1e-14);
}

TEST(ImageOfCircle, LineThroughPoleStaysALine) {
  const Inversion inv({1.0, 2.0}, 3.0);
  const auto line = GeneralizedCircle::line_through({1.0, 2.0}, {4.0, -1.0});
  const auto img = image_of_circle(inv, line);
  ASSERT_TRUE(img.is_line());
  EXPECT_LT(img.distance({1.0, 2.0}), 1e-12);
  EXPECT_LT(img.distance({4.0, -1.0}), 1e-12);
}

TEST(ImageOfCircle, UnitCircleIsFixed) {
  const auto img = image_of_circle(Inversion({0.0, 0.0}, 1.0), GeneralizedCircle::circle({0.0, 0.0}, 1.0));
  ASSERT_TRUE(img.is_circle());
  EXPECT_LT(norm(img.center()), 1e-14);
  EXPECT_NEAR(img.radius(), 1.0, 1e-14);
}

TEST(ImageOfCircle, MatchesPointwiseImages) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const Inversion inv({0.4, -0.2}, -1.7);
  const MobiusTransform m({1.0, 1.0}, {0.0, 2.0}, {0.5, 0.0}, {1.0, -1.0});
  for (int i = 0; i < 50; ++i) {
    const auto c = GeneralizedCircle::circle({u(rng), u(rng)}, 0.5 + std::abs(u(rng)));
    const auto ci = image_of_circle(inv, c);
    const auto cm = image_of_circle(m, c);
    for (int j = 0; j < 8; ++j) {
      const PlanePoint p = c.point_at(j * kPi / 4.0 + 0.1);
      if (distance(p, inv.pole) > 1e-3) {
        const PlanePoint q = invert_point(inv, p);
        EXPECT_LT(ci.distance(q), 1e-9 * std::max(1.0, norm(q)));
      }
      if (std::abs(m.c() * p.complex() + m.d()) > 1e-3) {
        const PlanePoint q = mobius_apply(m, p);
        EXPECT_LT(cm.distance(q), 1e-9 * std::max(1.0, norm(q)));
      }
    }
  }
}

TEST(Stereographic, Examples) {
  const PlanePoint s = stereographic_project(SpherePoint::south_pole());
  EXPECT_NEAR(norm(s), 0.0, 1e-15);
  const PlanePoint e = stereographic_project(deg(0.0, 0.0));
  EXPECT_NEAR(e.x, 1.0, 1e-15);
  EXPECT_NEAR(e.y, 0.0, 1e-15);
  const PlanePoint q = stereographic_project(SpherePoint(kPi / 4.0, kPi / 2.0));
  const PlanePoint oracle = ray_plane_oracle(SpherePoint(kPi / 4.0, kPi / 2.0));
  EXPECT_NEAR(q.x, 0.0, 1e-14);
  EXPECT_NEAR(q.y, 2.414213562373095, 1e-12);
  EXPECT_NEAR(distance(q, oracle), 0.0, 1e-13);
  EXPECT_THROW(stereographic_project(SpherePoint::north_pole()), Error);
}

TEST(Stereographic, AgreesWithRayOracleAndRoundTrips) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> z(-1.0, 0.99), lon(-kPi, kPi);
  for (int i = 0; i < 2000; ++i) {
    const SpherePoint p(std::asin(z(rng)), lon(rng));
    const PlanePoint q = stereographic_project(p);
    EXPECT_LT(distance(q, ray_plane_oracle(p)), 1e-12 * std::max(1.0, norm(q)));
    EXPECT_LT(chord_distance(stereographic_unproject(q), p), 1e-12);
  }
}

TEST(SphericalArea, OctantAndHemisphere) {
  const std::vector<SpherePoint> octant{deg(0, 0), deg(0, 90), deg(90, 0)};
  EXPECT_NEAR(spherical_polygon_area(octant), kPi / 2.0, 1e-12);
  const std::vector<SpherePoint> north{deg(0, 0), deg(0, 90), deg(0, 180), deg(0, -90)};
  EXPECT_NEAR(spherical_polygon_area(north), 2.0 * kPi, 1e-12);
  // Reversing the traversal selects the complement.
  const std::vector<SpherePoint> reversed{deg(90, 0), deg(0, 90), deg(0, 0)};
  EXPECT_NEAR(spherical_polygon_area(reversed), 4.0 * kPi - kPi / 2.0, 1e-12);
}

TEST(SphericalArea, ClosingVertexIgnored) {
  const std::vector<SpherePoint> closed{deg(0, 0), deg(0, 90), deg(90, 0), deg(0, 0)};
  EXPECT_NEAR(spherical_polygon_area(closed), kPi / 2.0, 1e-12);
}

TEST(SphericalArea, GreatCircleTrapezoid) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> lat(-80.0, 80.0), width(1.0, 120.0);
  for (int i = 0; i < 200; ++i) {
    double a = lat(rng), b = lat(rng);
    if (std::abs(a - b) < 0.5) continue;
    if (a > b) std::swap(a, b);
    const double w = width(rng);
    const std::vector<SpherePoint> quad{deg(a, 0), deg(a, w), deg(b, w), deg(b, 0)};
    EXPECT_NEAR(spherical_polygon_area(quad), trapezoid_oracle(deg_to_rad(a), deg_to_rad(b), deg_to_rad(w)), 1e-11);
  }
}

TEST(SphericalArea, Additivity) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-60.0, 60.0);
  for (int i = 0; i < 100; ++i) {
    // A convex quadrilateral split along a diagonal.
    const double lat0 = u(rng) / 2.0, lon0 = u(rng);
    const SpherePoint a = deg(lat0 - 10, lon0 - 10), b = deg(lat0 - 12, lon0 + 9);
    const SpherePoint c = deg(lat0 + 11, lon0 + 10), d = deg(lat0 + 9, lon0 - 11);
    const std::vector<SpherePoint> whole{a, b, c, d}, left{a, b, c}, right{a, c, d};
    EXPECT_NEAR(spherical_polygon_area(whole), spherical_polygon_area(left) + spherical_polygon_area(right), 1e-12);
  }
}

TEST(SphericalArea, Degenerate) {
  const std::vector<SpherePoint> two{deg(0, 0), deg(0, 10)};
  EXPECT_THROW(spherical_polygon_area(two), Error);
}

TEST(CircleFit, ExactCircle) {
  std::vector<PlanePoint> pts;
  for (int i = 0; i < 8; ++i) pts.push_back({std::cos(i * kPi / 4.0), std::sin(i * kPi / 4.0)});
  const CircleFit fit = circle_fit(pts);
  ASSERT_TRUE(fit.circle.is_circle());
  EXPECT_NEAR(fit.circle.radius(), 1.0, 1e-12);
  EXPECT_LT(norm(fit.circle.center()), 1e-12);
  EXPECT_LT(fit.rms_residual, 1e-12);
}

TEST(CircleFit, CollinearPointsGiveALine) {
  std::vector<PlanePoint> pts;
  for (int i = 0; i < 8; ++i) pts.push_back({1.0 + 0.5 * i, -2.0 + 0.25 * i});
  const CircleFit fit = circle_fit(pts);
  ASSERT_TRUE(fit.circle.is_line());
  EXPECT_LT(fit.rms_residual, 1e-12);
}

TEST(CircleFit, RadialNoise) {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> noise(-1e-6, 1e-6);
  std::vector<PlanePoint> pts;
  for (int i = 0; i < 64; ++i) {
    const double r = 1.0 + noise(rng), t = 2.0 * kPi * i / 64.0;
    pts.push_back({r * std::cos(t), r * std::sin(t)});
  }
  const CircleFit fit = circle_fit(pts);
  ASSERT_TRUE(fit.circle.is_circle());
  EXPECT_NEAR(fit.circle.radius(), 1.0, 1e-5);
}

TEST(CircleFit, ShortArcOfLargeCircle) {
  std::vector<PlanePoint> pts;
  const double r = 1e4;
  for (int i = 0; i < 16; ++i) {
    const double t = -0.01 + 0.02 * i / 15.0;
    pts.push_back({5.0 + r * std::cos(t), -3.0 + r * std::sin(t)});
  }
  const CircleFit fit = circle_fit(pts);
  ASSERT_TRUE(fit.circle.is_circle());
  EXPECT_NEAR(fit.circle.radius() / r, 1.0, 1e-6);
}

TEST(CircleFit, TooFewPoints) {
  const std::vector<PlanePoint> pts{{0, 0}, {1, 1}};
  try {
    circle_fit(pts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InsufficientPoints);
  }
}
