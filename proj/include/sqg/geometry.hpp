#pragma once

#include <cmath>

#include "sqg/errors.hpp"

namespace sqg {

// Point on the round unit 2-sphere, ambient coordinates.
struct UnitVector {
  double x = 0.0, y = 0.0, z = 1.0;

  // Normalizes (x,y,z); rejects near-zero input.
  static UnitVector normalized(double x, double y, double z);
  static UnitVector from_angles(double colat, double lon);

  double dot(const UnitVector& o) const { return x * o.x + y * o.y + z * o.z; }
  double colatitude() const { return std::acos(std::fmin(1.0, std::fmax(-1.0, z))); }
  double longitude() const { return std::atan2(y, x); }
};

// Stereographic plane coordinates, projection from the north pole.
struct StereoPoint {
  double w1 = 0.0, w2 = 0.0;
};

// Measured rotation-generator coefficients in the stereographic frame,
// maximized over the box |y0| <= h, |alpha| <= h.
struct ExpansionReport {
  double h = 0.0;
  double coeff_11 = 1.0;  // d/dalpha component along w1 at the worst sample
  double coeff_12 = 0.0;  // d/dalpha component along w2 at the worst sample
  double dev_11 = 0.0;    // max |coeff_11 - 1|
  double dev_12 = 0.0;    // max |coeff_12|
};

// Geodesic distance in [0, pi]; dot product clamped before acos.
double geodesic_distance(const UnitVector& p, const UnitVector& q);

// (w1, w2) = (x/(1-z), y/(1-z)); rejects points too close to the north pole.
StereoPoint stereographic_project(const UnitVector& p);
UnitVector stereographic_unproject(const StereoPoint& w);

// Closed-form differentiation of the rotation orbit through the
// stereographic map, scaled so the base-point tangent map is the identity.
ExpansionReport rotation_expansion_report(double h);

}  // namespace sqg
