#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "carta/distortion.hpp"

using namespace carta;

namespace {

PlanePoint plate_carree(const SpherePoint& p) { return {p.longitude(), p.latitude()}; }

// m(theta) = 1 / (2 sin^2(theta / 2)) with theta the distance from the North pole.
double stereographic_oracle(double latitude) {
  const double s = std::sin((kHalfPi - latitude) / 2.0);
  return 1.0 / (2.0 * s * s);
}

}  // namespace

TEST(DilatationFd, Stereographic) {
  const SphereMap stereo = as_sphere_map(LagrangeProjectionSpec(1.0));
  for (double h : {1e-3, 1e-4}) {
    EXPECT_NEAR(dilatation_fd(stereo, SpherePoint::south_pole(), h), 0.5, 1e-6);
    EXPECT_NEAR(dilatation_fd(stereo, SpherePoint(0.0, 0.3), h), 1.0, 1e-6);
  }
  EXPECT_NEAR(dilatation_fd_richardson(stereo, SpherePoint::south_pole(), 1e-3), 0.5, 1e-9);
  for (double lat = -1.5; lat < 1.2; lat += 0.1)
    EXPECT_NEAR(dilatation_fd_richardson(stereo, SpherePoint(lat, 1.0)), stereographic_oracle(lat),
                1e-8 * stereographic_oracle(lat));
}

TEST(DilatationFd, PlateCarreeAtEquatorIsUnit) {
  EXPECT_NEAR(dilatation_fd(plate_carree, SpherePoint(0.0, 0.2)), 1.0, 1e-8);
}

TEST(DilatationAnalytic, Examples) {
  const LagrangeProjectionSpec stereo(1.0);
  EXPECT_NEAR(dilatation_analytic(stereo, SpherePoint(0.0, 0.0)), 1.0, 1e-15);
  EXPECT_NEAR(dilatation_analytic(stereo, SpherePoint::south_pole()), 0.5, 1e-15);
}

TEST(DilatationAnalytic, AgreesWithFiniteDifferences) {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> c(0.3, 1.8), u(-1.0, 1.0), z(-0.9, 0.8);
  for (int s = 0; s < 20; ++s) {
    PostTransform post;
    if (s % 3 == 1) post = Inversion({4.0 + u(rng), 3.0 * u(rng)}, 5.0 * u(rng) + (u(rng) > 0 ? 8.0 : -8.0));
    if (s % 3 == 2) post = MobiusTransform({1.0, u(rng)}, {u(rng), 0.0}, {0.1 * u(rng), 0.1}, {1.0, 0.0});
    const auto surface = s % 2 ? SurfaceOfRevolution::spheroid(0.08) : SurfaceOfRevolution::sphere();
    const LagrangeProjectionSpec spec(c(rng), u(rng), post, surface);
    const SphereMap map = as_sphere_map(spec);
    for (int i = 0; i < 20; ++i) {
      const SpherePoint p(std::asin(z(rng)), spec.central_meridian() + 0.8 * spec.branch_half_width() * u(rng));
      const double exact = dilatation_analytic(spec, p);
      EXPECT_NEAR(dilatation_fd_richardson(map, p, 1e-4, surface), exact, 1e-7 * exact);
    }
  }
}

TEST(ConformalityDefect, LagrangeFamilyIsConformal) {
  std::mt19937 rng(22);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const LagrangeProjectionSpec spec(0.7, 0.1, Inversion({3.0, 1.0}, -2.0));
  for (int i = 0; i < 100; ++i) {
    const SpherePoint p(1.2 * u(rng), 2.5 * u(rng));
    EXPECT_LT(conformality_defect(as_sphere_map(spec), p), 1e-6);
  }
}

TEST(ConformalityDefect, PlateCarree) {
  // Principal scales 1 / cos(60 deg) = 2 and 1.
  const double oracle = 2.0 * std::asin((2.0 - 1.0) / (2.0 + 1.0));
  const double defect = conformality_defect(plate_carree, SpherePoint::from_degrees(60.0, 10.0));
  EXPECT_GT(defect, 0.4);
  EXPECT_NEAR(defect, oracle, 1e-7);
  EXPECT_LT(conformality_defect(plate_carree, SpherePoint(0.0, 0.1)), 1e-8);
}

TEST(DistortionReport, SinglePointAndEmpty) {
  const LagrangeProjectionSpec spec(0.5);
  const std::vector<SpherePoint> one{SpherePoint::from_degrees(20.0, 5.0)};
  EXPECT_DOUBLE_EQ(distortion_report(spec, one).ratio, 1.0);
  const std::vector<SpherePoint> none;
  try {
    distortion_report(spec, none);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyRegion);
  }
}

TEST(DistortionReport, StereographicCap) {
  std::vector<SpherePoint> pts;
  for (double lat = -90.0; lat <= -60.0; lat += 5.0)
    for (double lon = -180.0; lon < 180.0; lon += 30.0) pts.push_back(SpherePoint::from_degrees(lat, lon));
  const DistortionReport r = distortion_report(LagrangeProjectionSpec(1.0), pts);
  EXPECT_NEAR(r.m_min, 0.5, 1e-14);
  EXPECT_NEAR(r.m_max, stereographic_oracle(deg_to_rad(-60.0)), 1e-13);
  EXPECT_NEAR(r.ratio, 1.0 / (std::sin(deg_to_rad(75.0)) * std::sin(deg_to_rad(75.0))), 1e-12);

  const DistortionReport fd = distortion_report(as_sphere_map(LagrangeProjectionSpec(1.0)), pts);
  EXPECT_NEAR(fd.ratio, r.ratio, 1e-6);
  for (const auto& s : fd.samples) {
    ASSERT_TRUE(s.conformality_defect.has_value());
    EXPECT_LT(*s.conformality_defect, 1e-6);
  }
}
