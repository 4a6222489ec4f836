#include "carta/schwarzian.hpp"

#include <array>
#include <cmath>

namespace carta {

namespace {

constexpr int kStencil = 16;

Complex schwarzian_of(const ComplexDerivatives& d) {
  const Complex r2 = d.second / d.first;
  return d.third / d.first - 1.5 * r2 * r2;
}

}  // namespace

ComplexDerivatives complex_derivatives(const ComplexMap& f, Complex z, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::InvalidArgument, "probe radius must be positive");
  // Taylor coefficient a_n ~ (1/N) sum f(z + h w^k) (h w^k)^(-n).
  std::array<Complex, 4> coeff{};
  for (int k = 0; k < kStencil; ++k) {
    const Complex w = std::polar(1.0, 2.0 * kPi * k / kStencil);
    const Complex fv = f(z + h * w);
    Complex inv_pow = 1.0;
    for (std::size_t n = 1; n < 4; ++n) {
      inv_pow /= w;
      coeff[n] += fv * inv_pow;
    }
  }
  const double n = kStencil;
  return {coeff[1] / (n * h), 2.0 * coeff[2] / (n * h * h), 6.0 * coeff[3] / (n * h * h * h)};
}

SchwarzianValue schwarzian(const AnalyticSample& sample) {
  const ComplexDerivatives coarse = complex_derivatives(sample.map, sample.z, sample.h);
  if (std::abs(coarse.first) < 1e-10)
    throw Error(ErrorKind::CriticalPoint, "derivative vanishes at the evaluation point");
  const ComplexDerivatives fine = complex_derivatives(sample.map, sample.z, 0.5 * sample.h);
  const Complex s = schwarzian_of(coarse);
  return {s, std::abs(s - schwarzian_of(fine))};
}

double schwarzian_cocycle_residual(const ComplexMap& f, const ComplexMap& g, Complex z, double h) {
  const ComplexMap fg = [&](Complex w) { return f(g(w)); };
  const Complex lhs = schwarzian({fg, z, h}).value;
  const ComplexDerivatives dg = complex_derivatives(g, z, h);
  if (std::abs(dg.first) < 1e-10) throw Error(ErrorKind::CriticalPoint, "g' vanishes at the evaluation point");
  const Complex sf = schwarzian({f, g(z), h}).value;
  const Complex sg = schwarzian_of(dg);
  return std::abs(lhs - (sf * dg.first * dg.first + sg));
}

MobiusDeviation mobius_deviation(const ComplexMap& f, std::span<const Complex> points, double h) {
  if (points.size() < 5) throw Error(ErrorKind::InvalidArgument, "need at least 5 sample points");
  MobiusDeviation out;
  for (const Complex& z : points) {
    try {
      out.deviation = std::max(out.deviation, std::abs(schwarzian({f, z, h}).value));
      ++out.evaluated;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CriticalPoint) throw;
      ++out.skipped;
    }
  }
  return out;
}

ComplexMap transition_map(const LagrangeProjectionSpec& from, const LagrangeProjectionSpec& to) {
  const bool conjugate = from.reverses_orientation() != to.reverses_orientation();
  return [from, to, conjugate](Complex q) {
    const Complex w = project(to, unproject(from, PlanePoint(q))).complex();
    return conjugate ? std::conj(w) : w;
  };
}

}  // namespace carta
