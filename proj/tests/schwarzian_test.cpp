#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "carta/schwarzian.hpp"

using namespace carta;

namespace {

Complex square(Complex z) { return z * z; }
Complex expo(Complex z) { return std::exp(z); }
Complex root(Complex z) { return std::sqrt(z); }

ComplexMap mobius(Complex a, Complex b, Complex c, Complex d) {
  return [=](Complex z) { return (a * z + b) / (c * z + d); };
}

std::vector<Complex> ring_points(Complex center, double radius, int n) {
  std::vector<Complex> out;
  for (int i = 0; i < n; ++i) out.push_back(center + std::polar(radius, 2.0 * kPi * i / n));
  return out;
}

}  // namespace

TEST(ComplexDerivatives, Exponential) {
  const Complex z(0.3, -0.4);
  const ComplexDerivatives d = complex_derivatives(expo, z);
  EXPECT_LT(std::abs(d.first - std::exp(z)), 1e-12);
  EXPECT_LT(std::abs(d.second - std::exp(z)), 1e-11);
  EXPECT_LT(std::abs(d.third - std::exp(z)), 1e-8);
}

TEST(Schwarzian, SymbolicOracles) {
  // z^2: f''/f' = 1/z, f''' = 0, so S = -3 / (2 z^2).
  const SchwarzianValue sq = schwarzian({square, {1.0, 0.0}});
  EXPECT_LT(std::abs(sq.value - Complex(-1.5, 0.0)), 1e-9);
  const Complex z(0.7, 1.1);
  EXPECT_LT(std::abs(schwarzian({square, z}).value + 1.5 / (z * z)), 1e-9);
  for (Complex w : {Complex(0.0, 0.0), Complex(2.0, -1.0), Complex(-3.0, 0.5)})
    EXPECT_LT(std::abs(schwarzian({expo, w}).value - Complex(-0.5, 0.0)), 1e-8);
  // z^(1/2): S = 3 / (8 z^2).
  const Complex r(2.0, 1.0);
  EXPECT_LT(std::abs(schwarzian({root, r}).value - 3.0 / (8.0 * r * r)), 1e-8);
}

TEST(Schwarzian, MobiusKernel) {
  const ComplexMap f = mobius({1.0, 2.0}, {0.5, -1.0}, {0.2, 0.1}, {1.0, 0.0});
  for (Complex z : ring_points({0.5, 0.5}, 1.0, 12)) {
    const SchwarzianValue s = schwarzian({f, z});
    EXPECT_LT(std::abs(s.value), 1e-7);
    EXPECT_LT(s.error_bound, 1e-7);
  }
}

TEST(Schwarzian, ErrorBoundTracksTheError) {
  const Complex z(0.4, 0.2);
  const SchwarzianValue s = schwarzian({expo, z, 0.2});
  EXPECT_LE(std::abs(s.value + 0.5), 10.0 * s.error_bound + 1e-12);
}

TEST(Schwarzian, CriticalPoint) {
  try {
    schwarzian({square, {0.0, 0.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CriticalPoint);
  }
}

TEST(Cocycle, MobiusOnEitherSide) {
  const ComplexMap m = mobius({2.0, 0.0}, {1.0, 1.0}, {0.1, 0.0}, {1.0, 0.0});
  for (Complex z : ring_points({0.2, 0.1}, 0.5, 8)) {
    EXPECT_LT(schwarzian_cocycle_residual(m, expo, z), 1e-6);
    EXPECT_LT(schwarzian_cocycle_residual(expo, m, z), 1e-6);
    EXPECT_LT(schwarzian_cocycle_residual(square, expo, z), 1e-6);
  }
}

TEST(MobiusDeviation, KernelAndNonKernel) {
  const auto pts = ring_points({1.0, 1.0}, 0.5, 16);
  const MobiusDeviation m = mobius_deviation(mobius({1.0, 0.0}, {0.0, 1.0}, {0.3, 0.0}, {1.0, 1.0}), pts);
  EXPECT_LT(m.deviation, 1e-7);
  EXPECT_TRUE(m.is_mobius());
  EXPECT_EQ(m.evaluated, 16u);
  const MobiusDeviation e = mobius_deviation(expo, pts);
  EXPECT_NEAR(e.deviation, 0.5, 1e-8);
  EXPECT_FALSE(e.is_mobius());
}

TEST(MobiusDeviation, SkipsCriticalPointsAndNeedsSamples) {
  std::vector<Complex> pts = ring_points({0.0, 0.0}, 1.0, 6);
  pts.push_back({0.0, 0.0});
  const MobiusDeviation d = mobius_deviation(square, pts);
  EXPECT_EQ(d.skipped, 1u);
  EXPECT_EQ(d.evaluated, 6u);
  const std::vector<Complex> few = ring_points({0.0, 0.0}, 1.0, 3);
  EXPECT_THROW(mobius_deviation(expo, few), Error);
}

TEST(TransitionMap, SameExponentIsMobius) {
  const LagrangeProjectionSpec a(0.6, 0.1);
  const LagrangeProjectionSpec b(0.6, 0.1, Inversion({4.0, 1.0}, 9.0));
  const LagrangeProjectionSpec c(0.6, 0.1, MobiusTransform({1.0, 0.5}, {0.2, 0.0}, {0.05, 0.0}, {1.0, 0.0}));
  std::vector<Complex> pts;
  for (double lat : {-30.0, 0.0, 30.0})
    for (double lon : {-20.0, 20.0}) pts.push_back(project(a, SpherePoint::from_degrees(lat, lon)).complex());
  EXPECT_TRUE(mobius_deviation(transition_map(a, b), pts).is_mobius());
  EXPECT_TRUE(mobius_deviation(transition_map(a, c), pts).is_mobius());
  const LagrangeProjectionSpec other(0.9, 0.1);
  EXPECT_FALSE(mobius_deviation(transition_map(a, other), pts).is_mobius());
}
