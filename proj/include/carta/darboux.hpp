#pragma once

// Inversions carrying one triangle onto a copy of another, and the
// Apollonius-locus reduction of Lagrange's three-triangle construction.

#include <array>
#include <vector>

#include "carta/geometry.hpp"

namespace carta {

class Triangle {
 public:
  Triangle(PlanePoint a, PlanePoint b, PlanePoint c);

  PlanePoint a() const { return v_[0]; }
  PlanePoint b() const { return v_[1]; }
  PlanePoint c() const { return v_[2]; }
  const std::array<PlanePoint, 3>& vertices() const { return v_; }

  /// Side lengths opposite each vertex: |BC|, |CA|, |AB|.
  std::array<double, 3> sides() const;
  double signed_area() const;

 private:
  std::array<PlanePoint, 3> v_;
};

/// Side lengths of the inverted triangle from the distances to the pole:
/// a' = |k| a / (|PB| |PC|) and cyclically.
std::array<double, 3> image_triangle_sides(const Inversion& inv, const Triangle& t);

/// {P : |PA| / |PB| = ratio}; the perpendicular bisector when ratio is 1.
GeneralizedCircle apollonius_circle(PlanePoint a, PlanePoint b, double ratio);

/// All intersection points of two generalized circles (0, 1 or 2).
std::vector<PlanePoint> intersect(const GeneralizedCircle& first, const GeneralizedCircle& second);

struct InversionSearch {
  /// Match target vertices to source vertices in any of the 6 orders rather
  /// than label by label.
  bool unlabeled = false;
  /// Also report the negative-power twin of each solution (the same
  /// inversion followed by a half-turn about its pole).
  bool include_negative_powers = false;
};

/// Inversions J with J(source) congruent to target (side lengths matched by
/// label unless `unlabeled`). The pole lies on the two Apollonius loci
///   |PA|/|PB| = a0 b / (a b0),   |PB|/|PC| = b0 c / (b c0),
/// and the power is a0 |PB| |PC| / a. An empty result means no such
/// inversion exists.
std::vector<Inversion> find_inversion(const Triangle& source, const Triangle& target, InversionSearch options = {});

/// Largest relative side mismatch between inv(source) and target.
double side_error(const Inversion& inv, const Triangle& source, const Triangle& target);

struct LagrangeConfiguration {
  std::array<PlanePoint, 3> points;  // R, R', R''
  std::array<double, 3> angles;      // angle BRA at each point, radians
};

/// Places R, R', R'' above the base AB with |RB|/|RA| = ratios[i] and
/// angles BRA = free_angle, free_angle + angle_diffs[0], free_angle +
/// angle_diffs[1]. The data fix the configuration only up to the free angle.
LagrangeConfiguration lagrange_constraints_to_triangles(PlanePoint base_a, PlanePoint base_b,
                                                        const std::array<double, 3>& ratios,
                                                        const std::array<double, 2>& angle_diffs, double free_angle);

}  // namespace carta
