#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "sqg/fractional.hpp"
#include "sqg/grid.hpp"
#include "vendor/doctest.h"

using namespace sqg;
namespace {
constexpr double kPi = std::numbers::pi;

SpectralField random_real_field(int lmax, int lo, int hi, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  SpectralField a(lmax);
  for (int l = lo; l <= hi; ++l) {
    a.at(l, 0) = g(rng);
    for (int m = 1; m <= l; ++m) {
      const std::complex<double> c(g(rng), g(rng));
      a.at(l, m) = c;
      a.at(l, -m) = ((m % 2 == 0) ? 1.0 : -1.0) * std::conj(c);
    }
  }
  return a;
}

UnitVector random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  while (true) {
    const double x = g(rng), y = g(rng), z = g(rng);
    if (x * x + y * y + z * z > 1e-12) return UnitVector::normalized(x, y, z);
  }
}

std::complex<double> inner(const SpectralField& a, const SpectralField& b) {
  std::complex<double> s = 0.0;
  const int lmax = std::min(a.lmax(), b.lmax());
  for (int l = 0; l <= lmax; ++l) {
    for (int m = -l; m <= l; ++m) s += std::conj(a.at(l, m)) * b.at(l, m);
  }
  return s;
}
}  // namespace

TEST_CASE("spectral multiplier") {
  SpectralField y20 = SpectralField::real_harmonic(8, 2, 0);
  SpectralField out = lambda_power(y20, 1.0);
  CHECK(std::abs(out.at(2, 0) - std::sqrt(6.0)) <= 1e-14);

  SpectralField c(4);
  c.at(0, 0) = 3.0;
  CHECK(lambda_power(c, 1.0).l2_norm() <= 1e-15);

  SpectralField y10 = SpectralField::real_harmonic(4, 1, 0);
  CHECK(std::abs(lambda_power(y10, -1.0).at(1, 0) - 1.0 / std::sqrt(2.0)) <= 1e-14);

  CHECK_THROWS_AS(lambda_power(c, -1.0), error);
  CHECK_THROWS_AS(lambda_power(y10, 2.5), error);

  // Semigroup property and self-adjointness (spectral path).
  const SpectralField f = random_real_field(10, 1, 10, 3);
  const SpectralField g = random_real_field(10, 1, 10, 4);
  SpectralField ab = lambda_power(lambda_power(f, 0.7), 0.5);
  ab -= lambda_power(f, 1.2);
  CHECK(ab.l2_norm() <= 1e-12);
  CHECK(std::abs(inner(f, lambda_power(g, 1.3)) - inner(lambda_power(f, 1.3), g)) <= 1e-10);
}

TEST_CASE("heat kernel") {
  const UnitVector x{0.0, 0.0, 1.0};
  // Frozen truncated-series value at t = 1 on the diagonal.
  CHECK(heat_kernel(x, x, 1.0) == doctest::Approx(0.11287607871522172).epsilon(1e-12));

  // Stochastic completeness by quadrature.
  auto g = Grid::make(40);
  for (double t : {0.05, 0.5}) {
    double mass = 0.0;
    const double dphi = 2.0 * kPi / g->n_lon();
    for (int i = 0; i < g->n_lat(); ++i) {
      for (int j = 0; j < g->n_lon(); ++j) {
        const UnitVector y = UnitVector::from_angles(g->colatitudes()[i], g->longitude(j));
        mass += heat_kernel(x, y, t) * g->quad_weights()[i] * dphi;
      }
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
  }

  // Positivity and Gaussian-form bound with one fitted constant.
  double fitted = 0.0;
  for (double t : {1e-3, 1e-2, 1e-1, 1.0}) {
    for (int di = 0; di <= 8; ++di) {
      const double d = kPi * di / 8.0;
      const double v = heat_kernel(x, UnitVector::from_angles(d, 0.0), t);
      // Below the truncation noise floor of the spectral series the sign is
      // meaningless; only insist on positivity where the value is resolvable.
      if (d * d / (4.0 * t) < 25.0) {
        CHECK(v > 0.0);
        fitted = std::max(fitted, v * t * std::exp(d * d / (5.0 * t)));
      } else {
        CHECK(std::abs(v) < 1e-9);
      }
    }
  }
  CHECK(fitted <= 1.0);

  // Symmetry and invalid time.
  std::mt19937_64 rng(7);
  const UnitVector p = random_unit(rng), q = random_unit(rng);
  CHECK(heat_kernel(p, q, 0.3) == doctest::Approx(heat_kernel(q, p, 0.3)).epsilon(1e-14));
  CHECK_THROWS_AS(heat_kernel(p, q, 0.0), error);
}

TEST_CASE("semigroup subordination path") {
  for (double alpha : {0.5, 1.0, 1.5}) {
    const SemigroupQuadrature q = SemigroupQuadrature::make(alpha);
    // Calibration invariant on the l = 1 eigenvalue.
    const SpectralField y10 = SpectralField::real_harmonic(4, 1, 0);
    const UnitVector x = UnitVector::from_angles(0.4, 1.1);
    const double expect = std::pow(2.0, 0.5 * alpha) * point_evaluate(y10, x);
    CHECK(lambda_semigroup(y10, x, alpha, q) == doctest::Approx(expect).epsilon(1e-6));

    SpectralField c(4);
    c.at(0, 0) = 2.0;
    CHECK(std::abs(lambda_semigroup(c, x, alpha, q)) <= 1e-12);
  }

  // Y_53 at alpha = 0.6 against the spectral oracle at 10 random points.
  const double alpha = 0.6;
  const SemigroupQuadrature q = SemigroupQuadrature::make(alpha);
  const SpectralField f = SpectralField::real_harmonic(8, 5, 3);
  const SpectralField lf = lambda_power(f, alpha);
  std::mt19937_64 rng(19);
  double sup = 0.0, err = 0.0;
  std::vector<UnitVector> pts;
  for (int i = 0; i < 10; ++i) pts.push_back(random_unit(rng));
  for (const auto& p : pts) sup = std::max(sup, std::abs(point_evaluate(lf, p)));
  for (const auto& p : pts) {
    err = std::max(err,
                   std::abs(lambda_semigroup(f, p, alpha, q) - point_evaluate(lf, p)));
  }
  CHECK(err <= 1e-5 * sup);

  CHECK_THROWS_AS(lambda_semigroup(f, pts[0], 0.9, q), error);
  CHECK_THROWS_AS(SemigroupQuadrature::make(2.5), error);
}

TEST_CASE("singular integral path") {
  const UnitVector np{0.0, 0.0, 1.0};
  SpectralField c(4);
  c.at(0, 0) = 1.5;
  const SingularKernel k64 = SingularKernel::make(1.0, 64);
  CHECK(std::abs(lambda_singular(c, np, k64)) <= 1e-12);

  // Y_20 eigenvalue at the pole under quadrature refinement.
  const SpectralField y20 = SpectralField::real_harmonic(8, 2, 0);
  const double exact = std::sqrt(6.0) * point_evaluate(y20, np);
  double prev = std::numeric_limits<double>::infinity();
  for (int ql : {64, 128}) {
    const SingularKernel k = SingularKernel::make(1.0, ql);
    const double rel = std::abs(lambda_singular(y20, np, k) - exact) / std::abs(exact);
    CHECK(rel < prev);
    prev = rel;
    if (ql == 128) CHECK(rel <= 5e-2);
  }

  // pv_epsilon incompatible with the band limit.
  SpectralField high(64);
  high.at(64, 0) = 1.0;
  const SingularKernel k16 = SingularKernel::make(1.0, 16);
  CHECK_THROWS_AS(lambda_singular(high, np, k16), error);
  CHECK_THROWS_AS(SingularKernel::make(1.0, 64, -0.1, 2.0), error);
}

TEST_CASE("kernel constant seed and calibration") {
  CHECK(c_alpha_seed(1.0) == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-14));
  const SingularKernel k = SingularKernel::make(1.0, 96);
  const double cal = c_alpha_calibrated(k);
  CHECK(cal == doctest::Approx(k.c_alpha).epsilon(0.05));
}

TEST_CASE("Dirichlet-type functional D(x)") {
  const UnitVector np{0.0, 0.0, 1.0};
  const SingularKernel k = SingularKernel::make(1.0, 32);
  SpectralField c(4);
  c.at(0, 0) = 2.0;
  CHECK(std::abs(dirichlet_D(c, np, k)) <= 1e-12);

  const SpectralField y10 = SpectralField::real_harmonic(4, 1, 0);
  CHECK(dirichlet_D(y10, np, k) > 0.0);

  std::mt19937_64 rng(77);
  for (int i = 0; i < 100; ++i) {
    const SpectralField f = random_real_field(8, 1, 6, 500 + i);
    CHECK(dirichlet_D(f, random_unit(rng), k) >= 0.0);
  }
}

TEST_CASE("commutator probe") {
  CommutatorProbe probe;
  probe.a = SpectralField::real_harmonic(2, 2, 0);
  probe.x0 = UnitVector{0.0, 0.0, 1.0};

  // Constant multiplier commutes.
  CommutatorProbe const_probe;
  const_probe.a = SpectralField(2);
  const_probe.a.at(0, 0) = 3.0;
  const_probe.x0 = probe.x0;
  const SpectralField y10 = SpectralField::real_harmonic(4, 1, 0);
  CHECK(std::abs(commutator_apply(const_probe, y10, 1.0)) <= 1e-12);

  // Finite value on the reference probe.
  const double v = commutator_apply(probe, y10, 1.0);
  CHECK(std::isfinite(v));

  // Gradient condition violated at a generic point.
  CommutatorProbe bad;
  bad.a = SpectralField::real_harmonic(2, 2, 0);
  bad.x0 = UnitVector::from_angles(0.9, 0.3);
  CHECK_THROWS_AS(commutator_apply(bad, y10, 1.0), error);
}

TEST_CASE("positivity at maxima via the spectral path") {
  auto grid = Grid::make(32);
  for (int s = 0; s < 20; ++s) {
    const SpectralField f = random_real_field(12, 2, 10, 900 + s);
    const PhysicalField phys = synthesize(f, grid);
    const PhysicalField lam = synthesize(lambda_power(f, 1.0), grid);
    double best = -1.0;
    size_t arg = 0;
    for (size_t i = 0; i < phys.values().size(); ++i) {
      if (std::abs(phys.values()[i]) > best) {
        best = std::abs(phys.values()[i]);
        arg = i;
      }
    }
    const double signed_v = (phys.values()[arg] > 0 ? 1.0 : -1.0) * lam.values()[arg];
    CHECK(signed_v >= -1e-6 * best);
  }
}
