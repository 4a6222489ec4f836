#pragma once

// Schwarzian derivative S(f) = f'''/f' - (3/2) (f''/f')^2 of holomorphic plane
// maps. S vanishes exactly on Mobius transformations, so a transition map
// between two conformal charts preserves circles iff its Schwarzian is zero.

#include <complex>
#include <functional>
#include <span>

#include "carta/lagrange.hpp"

namespace carta {

using Complex = std::complex<double>;
using ComplexMap = std::function<Complex(Complex)>;

inline constexpr double kDefaultSchwarzianStep = 1e-2;
inline constexpr double kMobiusThreshold = 1e-6;

struct AnalyticSample {
  ComplexMap map;
  Complex z;
  double h = kDefaultSchwarzianStep;
};

struct ComplexDerivatives {
  Complex first, second, third;
};

/// Derivatives from a 16-point symmetric stencil on the circle |w - z| = h
/// (discrete Cauchy formula).
ComplexDerivatives complex_derivatives(const ComplexMap& f, Complex z, double h = kDefaultSchwarzianStep);

struct SchwarzianValue {
  Complex value;
  /// |S(h) - S(h/2)|: gap between the estimates at two step sizes.
  double error_bound = 0.0;
};

SchwarzianValue schwarzian(const AnalyticSample& sample);

/// |S(f o g)(z) - (S(f)(g(z)) g'(z)^2 + S(g)(z))|.
double schwarzian_cocycle_residual(const ComplexMap& f, const ComplexMap& g, Complex z,
                                   double h = kDefaultSchwarzianStep);

struct MobiusDeviation {
  double deviation = 0.0;  // max |S(f)| over evaluated samples
  std::size_t evaluated = 0;
  std::size_t skipped = 0;  // critical points
  bool is_mobius() const { return deviation < kMobiusThreshold; }
};

MobiusDeviation mobius_deviation(const ComplexMap& f, std::span<const Complex> points,
                                 double h = kDefaultSchwarzianStep);

/// q -> project(to, unproject(from, q)), post-composed with complex
/// conjugation when exactly one of the two specs reverses orientation, so the
/// result is holomorphic.
ComplexMap transition_map(const LagrangeProjectionSpec& from, const LagrangeProjectionSpec& to);

}  // namespace carta
