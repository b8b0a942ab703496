#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "sqg/diagnostics.hpp"
#include "sqg/grid.hpp"
#include "vendor/doctest.h"

using namespace sqg;
namespace {
constexpr double kPi = std::numbers::pi;

SimulationState state_of(SpectralField f, double t = 0.0) {
  SimulationState s;
  s.theta = std::move(f);
  s.time = t;
  return s;
}
}  // namespace

TEST_CASE("record on reference harmonics") {
  const DiagnosticsRecord r20 = record(state_of(SpectralField::real_harmonic(16, 2, 0)), 1.0);
  CHECK(r20.l2 == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(r20.h1 == doctest::Approx(std::sqrt(6.0)).epsilon(1e-13));
  CHECK(r20.h2 == doctest::Approx(6.0).epsilon(1e-13));

  // Y_10 at high truncation: the node argmax approaches the pole value.
  const DiagnosticsRecord r10 = record(state_of(SpectralField::real_harmonic(64, 1, 0)), 1.0);
  CHECK(r10.linf == doctest::Approx(std::sqrt(3.0 / (4.0 * kPi))).epsilon(1e-3));
  CHECK(r10.maxpoint_lambda > 0.0);
  CHECK(r10.maxpoint_lambda == doctest::Approx(std::sqrt(2.0) * r10.linf).epsilon(1e-10));

  // Cauchy-Schwarz invariant on the unit sphere.
  CHECK(r10.l2 <= std::sqrt(4.0 * kPi) * r10.linf + 1e-12);

  // Oversampling refines the discrete sup only modestly for a resolved field.
  const SpectralField f = InitialCondition::parse("random:2,12,1.0,3").build(16);
  const DiagnosticsRecord base = record(state_of(f), 1.0, 1);
  const DiagnosticsRecord fine = record(state_of(f), 1.0, 2);
  CHECK(std::abs(base.linf - fine.linf) <= 5e-2 * fine.linf);
  CHECK(base.linf <= fine.linf + 1e-12);

  // Sobolev norms nondecreasing in s for fields supported on l >= 2.
  const SpectralField g = InitialCondition::parse("random:2,10,1.0,9").build(12);
  const DiagnosticsRecord rg = record(state_of(g), 1.0);
  CHECK(rg.h1 <= rg.h1_5);
  CHECK(rg.h1_5 <= rg.h2);
  CHECK(rg.h2 <= rg.h3);
}

TEST_CASE("maximum principle check") {
  const double v10 = max_principle_check(SpectralField::real_harmonic(32, 1, 0), 1.0);
  CHECK(v10 == doctest::Approx(std::sqrt(2.0) * std::sqrt(3.0 / (4.0 * kPi))).epsilon(1e-2));

  const SpectralField y20 = SpectralField::real_harmonic(32, 2, 0);
  const double v20 = max_principle_check(y20, 1.0);
  CHECK(v20 > 0.0);
  // |Y_20| attains its max at the poles where Y_20 > 0.
  CHECK(v20 == doctest::Approx(std::sqrt(6.0) * std::sqrt(5.0 / (4.0 * kPi))).epsilon(1e-2));

  for (int s = 0; s < 10; ++s) {
    const SpectralField f = InitialCondition::parse("random:2,12,1.0," + std::to_string(s))
                                .build(16);
    const double sup = record(state_of(f), 1.0, 2).linf;
    CHECK(max_principle_check(f, 1.0) >= -1e-6 * sup);
  }
  CHECK_THROWS_AS(max_principle_check(SpectralField(8), 1.0), error);
}

TEST_CASE("modulus of continuity estimate") {
  SpectralField c(4);
  c.at(0, 0) = 5.0;
  const ModulusEstimate flat = modulus_estimate(c, {0.3, 1.0}, 500);
  CHECK(flat.omega_values[0] <= 1e-12);
  CHECK(flat.omega_values[1] <= 1e-12);

  const SpectralField y10 = SpectralField::real_harmonic(4, 1, 0);
  const ModulusEstimate est = modulus_estimate(y10, {0.1, 0.5, 1.0, kPi - 0.01}, 20000);
  // Pole-to-pole oscillation of Y_10.
  CHECK(est.omega_values.back() ==
        doctest::Approx(2.0 * std::sqrt(3.0 / (4.0 * kPi))).epsilon(0.03));
  // Monotone envelope.
  for (size_t i = 1; i < est.omega_values.size(); ++i) {
    CHECK(est.omega_values[i] >= est.omega_values[i - 1]);
  }
  // Mean-value bound with the 10% pair-distance jitter.
  const double grad_sup = record(state_of(y10), 1.0, 2).grad_sup;
  for (size_t i = 0; i < est.rho_values.size(); ++i) {
    if (est.rho_values[i] <= 0.5) {
      CHECK(est.omega_values[i] <= 1.1 * grad_sup * est.rho_values[i] + 1e-12);
    }
  }
  // Bounded by twice the sup norm.  The discrete grid sup slightly
  // undershoots the true pole value of Y_10, so compare analytically.
  const double true_sup = std::sqrt(3.0 / (4.0 * kPi));
  for (double w : est.omega_values) CHECK(w <= 2.0 * true_sup + 1e-9);

  CHECK_THROWS_AS(modulus_estimate(y10, {-0.5}, 100), error);
}

TEST_CASE("nonlinear bound check") {
  const SingularKernel k = SingularKernel::make(1.0, 32);

  SpectralField c(4);
  c.at(0, 0) = 1.0;
  const BoundCheckReport empty = nonlinear_bound_check(c, 1.0, k, 1.0);
  CHECK(empty.empty_flagged);
  CHECK(empty.points.empty());

  const SpectralField y40 = SpectralField::real_harmonic(4, 4, 0);
  const BoundCheckReport rep = nonlinear_bound_check(y40, 1.0, k, 1.0, 6);
  CHECK(!rep.empty_flagged);
  CHECK(rep.violations == 0);
  for (const auto& p : rep.points) {
    CHECK(p.lhs > 0.0);
    CHECK(p.rhs > 0.0);
  }
  CHECK(std::isfinite(rep.fitted_constant));
}

TEST_CASE("l2 decay audit") {
  std::vector<DiagnosticsRecord> recs(3);
  recs[0].time = 0.0;
  recs[0].l2 = 1.0;
  recs[1].time = 0.1;
  recs[1].l2 = 0.8;
  recs[2].time = 0.2;
  recs[2].l2 = 0.7;
  CHECK(l2_decay_audit(recs).ok);

  recs[2].l2 = 0.9;
  const DecayAuditReport bad = l2_decay_audit(recs);
  CHECK(!bad.ok);
  CHECK(bad.max_sq_increase == doctest::Approx(0.81 - 0.64).epsilon(1e-12));

  CHECK(l2_decay_audit({recs[0]}).ok);  // vacuous single record
}

TEST_CASE("gradient monitor") {
  std::vector<DiagnosticsRecord> recs;
  for (int i = 0; i <= 50; ++i) {
    DiagnosticsRecord r;
    r.time = 0.1 * i;
    r.linf = 1.0;
    r.grad_sup = 2.0 * std::exp(-0.3 * r.time);
    recs.push_back(r);
  }
  const GradientMonitorReport rep = gradient_monitor(recs, 1.0);
  CHECK(rep.sup_after_t0 == doctest::Approx(2.0 * std::exp(-0.3)).epsilon(1e-12));
  CHECK(rep.ratio_to_initial == doctest::Approx(std::exp(-0.3)).epsilon(1e-12));
  CHECK(rep.no_blowup_trend);
  CHECK_THROWS_AS(gradient_monitor(recs, 100.0), error);
}

TEST_CASE("H3 inequality fit") {
  // Pure decay: the fitted constant is negative.
  std::vector<DiagnosticsRecord> recs;
  for (int i = 0; i <= 20; ++i) {
    DiagnosticsRecord r;
    r.time = 0.05 * i;
    r.h3 = std::exp(-std::sqrt(6.0) * r.time);
    recs.push_back(r);
  }
  const H3FitReport rep = h3_inequality_fit(recs);
  CHECK(!rep.skipped);
  CHECK(rep.fitted_C < 0.0);
  CHECK(rep.stable);

  std::vector<DiagnosticsRecord> zeros(5);
  for (int i = 0; i < 5; ++i) zeros[i].time = 0.1 * i;
  CHECK(h3_inequality_fit(zeros).skipped);

  CHECK_THROWS_AS(h3_inequality_fit({recs[0], recs[1]}), error);
}

TEST_CASE("twin runs with identical configs coincide") {
  SolverConfig c;
  c.lmax = 12;
  c.dt = 2e-3;
  c.t_end = 0.1;
  c.sample_every = 10;
  const TwinRunReport rep = twin_run_compare(c, c, InitialCondition::parse("random:3,8,1.0,4"));
  for (double d : rep.distances) CHECK(d <= 1e-14);
  CHECK(rep.within_envelope);

  SolverConfig other = c;
  other.dt = 1e-3;
  CHECK_THROWS_AS(twin_run_compare(c, other, InitialCondition::parse("zonal:2")), error);
}
