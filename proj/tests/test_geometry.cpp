#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <random>

#include "sqg/errors.hpp"
#include "sqg/geometry.hpp"
#include "vendor/doctest.h"

using namespace sqg;
namespace {
constexpr double kPi = std::numbers::pi;

UnitVector random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  while (true) {
    const double x = g(rng), y = g(rng), z = g(rng);
    if (x * x + y * y + z * z > 1e-12) return UnitVector::normalized(x, y, z);
  }
}
}  // namespace

TEST_CASE("unit vector constructors normalize") {
  const UnitVector p = UnitVector::normalized(1.0, 2.0, 3.0);
  CHECK(std::abs(p.x * p.x + p.y * p.y + p.z * p.z - 1.0) <= 1e-14);
  const UnitVector q = UnitVector::from_angles(0.7, 2.1);
  CHECK(std::abs(q.x * q.x + q.y * q.y + q.z * q.z - 1.0) <= 1e-14);
  CHECK(std::abs(q.colatitude() - 0.7) <= 1e-13);
  CHECK(std::abs(q.longitude() - 2.1) <= 1e-13);
  CHECK_THROWS_AS(UnitVector::normalized(0.0, 0.0, 0.0), error);
}

TEST_CASE("geodesic distance special values") {
  const UnitVector np{0.0, 0.0, 1.0}, sp{0.0, 0.0, -1.0}, ex{1.0, 0.0, 0.0};
  CHECK(geodesic_distance(np, np) == 0.0);
  CHECK(std::abs(geodesic_distance(np, ex) - kPi / 2.0) <= 1e-15);
  CHECK(std::abs(geodesic_distance(np, sp) - kPi) <= 1e-15);
}

TEST_CASE("geodesic distance symmetry and triangle inequality") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10000; ++i) {
    const UnitVector p = random_unit(rng), q = random_unit(rng), r = random_unit(rng);
    CHECK(geodesic_distance(p, q) == geodesic_distance(q, p));
    CHECK(geodesic_distance(p, r) <=
          geodesic_distance(p, q) + geodesic_distance(q, r) + 1e-12);
  }
}

TEST_CASE("stereographic projection formula and round trip") {
  const StereoPoint a = stereographic_project(UnitVector{0.0, 0.0, -1.0});
  CHECK(a.w1 == 0.0);
  CHECK(a.w2 == 0.0);
  const StereoPoint b = stereographic_project(UnitVector{1.0, 0.0, 0.0});
  CHECK(std::abs(b.w1 - 1.0) <= 1e-15);
  CHECK(std::abs(b.w2) <= 1e-15);
  const StereoPoint c = stereographic_project(UnitVector{0.0, 1.0, 0.0});
  CHECK(std::abs(c.w1) <= 1e-15);
  CHECK(std::abs(c.w2 - 1.0) <= 1e-15);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    UnitVector p = random_unit(rng);
    if (p.z >= 0.9) continue;
    const UnitVector q = stereographic_unproject(stereographic_project(p));
    CHECK(std::abs(p.x - q.x) <= 1e-12);
    CHECK(std::abs(p.y - q.y) <= 1e-12);
    CHECK(std::abs(p.z - q.z) <= 1e-12);
  }
  CHECK_THROWS_AS(stereographic_project(UnitVector{0.0, 0.0, 1.0}), error);
}

TEST_CASE("rotation expansion limit and quadratic order") {
  const ExpansionReport tiny = rotation_expansion_report(1e-6);
  CHECK(tiny.dev_11 <= 1e-10);
  CHECK(tiny.dev_12 <= 1e-10);

  // Deviations are second order: frozen reference values at h = 0.1.
  const ExpansionReport h01 = rotation_expansion_report(0.1);
  CHECK(h01.dev_11 == doctest::Approx(0.0025100033109677).epsilon(1e-10));
  CHECK(h01.dev_12 == doctest::Approx(0.005016607345747782).epsilon(1e-10));

  // Log-log slope of dev_11 over the acceptance ladder.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double hs[4] = {0.2, 0.1, 0.05, 0.025};
  for (double h : hs) {
    const double lx = std::log(h), ly = std::log(rotation_expansion_report(h).dev_11);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (4.0 * sxy - sx * sy) / (4.0 * sxx - sx * sx);
  CHECK(slope == doctest::Approx(2.0).epsilon(0.05));

  // Ratio bound dev/h^2 over the stated range.
  for (double h : {1e-3, 5e-3, 0.02, 0.05, 0.1, 0.2}) {
    const ExpansionReport r = rotation_expansion_report(h);
    CHECK(r.dev_11 / (h * h) <= 0.5);
    CHECK(r.dev_12 / (h * h) <= 0.7);
  }
  CHECK_THROWS_AS(rotation_expansion_report(0.0), error);
  CHECK_THROWS_AS(rotation_expansion_report(0.5), error);
}
