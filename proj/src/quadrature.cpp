#include "carta/quadrature.hpp"

#include <array>
#include <cmath>

namespace carta {

namespace {

// 15-point Kronrod nodes on [-1, 1] (non-negative half) with the embedded
// 7-point Gauss weights on the odd nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Estimate {
  double kronrod;
  double error;
};

Estimate gk15(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(mid);
  double k = kKronrod[7] * fc;
  double g = kGauss[3] * fc;
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double s = f(mid - dx) + f(mid + dx);
    k += kKronrod[i] * s;
    if (i % 2 == 1) g += kGauss[i / 2] * s;
  }
  return {k * half, std::abs((k - g) * half)};
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol, int depth) {
  const Estimate e = gk15(f, a, b);
  if (e.error <= tol || depth <= 0) return e.kronrod;
  const double mid = 0.5 * (a + b);
  return adapt(f, a, mid, 0.5 * tol, depth - 1) + adapt(f, mid, b, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_gauss_kronrod(const std::function<double(double)>& f, double a, double b, double abs_tol,
                               int max_depth) {
  if (a == b) return 0.0;
  return adapt(f, a, b, abs_tol, max_depth);
}

}  // namespace carta
