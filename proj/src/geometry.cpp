#include "sqg/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace sqg {

UnitVector UnitVector::normalized(double x, double y, double z) {
  double n = std::sqrt(x * x + y * y + z * z);
  require(n > 1e-300, errc::invalid_argument, "cannot normalize near-zero vector");
  return UnitVector{x / n, y / n, z / n};
}

UnitVector UnitVector::from_angles(double colat, double lon) {
  double s = std::sin(colat);
  return UnitVector{s * std::cos(lon), s * std::sin(lon), std::cos(colat)};
}

double geodesic_distance(const UnitVector& p, const UnitVector& q) {
  double d = std::clamp(p.dot(q), -1.0, 1.0);
  return std::acos(d);
}

StereoPoint stereographic_project(const UnitVector& p) {
  require(p.z < 1.0 - 1e-10, errc::precondition,
          "stereographic projection undefined near the north pole");
  return StereoPoint{p.x / (1.0 - p.z), p.y / (1.0 - p.z)};
}

UnitVector stereographic_unproject(const StereoPoint& w) {
  double r2 = w.w1 * w.w1 + w.w2 * w.w2;
  double z = (r2 - 1.0) / (r2 + 1.0);
  return UnitVector{w.w1 * (1.0 - z), w.w2 * (1.0 - z), z};
}

namespace {

// Rotation generator about the y axis, evaluated along the circle y = y0 of
// the unit sphere, pushed through the stereographic map onto the plane
// tangent at the south pole (coordinates scaled so the tangent map at the
// south pole is the identity).  Components of d/dalpha in the (w1, w2) basis:
//   W(alpha) = 2 (c sin(alpha), y0) / (1 + c cos(alpha)),  c = sqrt(1 - y0^2)
void orbit_coefficients(double y0, double alpha, double& c11, double& c12) {
  double c = std::sqrt(1.0 - y0 * y0);
  double den = 1.0 + c * std::cos(alpha);
  c11 = 2.0 * c * (std::cos(alpha) + c) / (den * den);
  c12 = 2.0 * y0 * c * std::sin(alpha) / (den * den);
}

}  // namespace

ExpansionReport rotation_expansion_report(double h) {
  require(h > 0.0 && h <= 0.3, errc::precondition, "neighborhood scale h must be in (0, 0.3]");
  constexpr int kSamples = 32;
  ExpansionReport rep;
  rep.h = h;
  for (int i = 0; i < kSamples; ++i) {
    double y0 = -h + 2.0 * h * i / (kSamples - 1);
    for (int j = 0; j < kSamples; ++j) {
      double alpha = -h + 2.0 * h * j / (kSamples - 1);
      double c11, c12;
      orbit_coefficients(y0, alpha, c11, c12);
      if (std::abs(c11 - 1.0) >= rep.dev_11) {
        rep.dev_11 = std::abs(c11 - 1.0);
        rep.coeff_11 = c11;
      }
      if (std::abs(c12) >= rep.dev_12) {
        rep.dev_12 = std::abs(c12);
        rep.coeff_12 = c12;
      }
    }
  }
  return rep;
}

}  // namespace sqg
