#pragma once

#include <functional>

namespace carta {

/// Adaptive 7/15-point Gauss-Kronrod integration of f over [a, b] to the
/// given absolute tolerance. Bisects up to `max_depth` levels.
double integrate_gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                               double abs_tol = 1e-12, int max_depth = 50);

}  // namespace carta
