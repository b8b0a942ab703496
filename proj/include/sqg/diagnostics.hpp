#pragma once

#include <vector>

#include "sqg/fractional.hpp"
#include "sqg/solver.hpp"

namespace sqg {

struct DiagnosticsRecord {
  double time = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  double grad_sup = 0.0;
  double h1 = 0.0, h1_5 = 0.0, h2 = 0.0, h3 = 0.0;
  // Lambda^alpha theta at the |theta| argmax, signed by the sign of theta there.
  double maxpoint_lambda = 0.0;
  UnitVector grad_argmax{0.0, 0.0, 1.0};
};

// oversample scales the evaluation grid relative to the field truncation;
// the argmax is always taken over discrete nodes.
DiagnosticsRecord record(const SimulationState& s, double alpha, int oversample = 1);

// sign(theta(x*)) * Lambda^alpha theta(x*) at x* = argmax |theta|.
double max_principle_check(const SpectralField& theta, double alpha);

struct ModulusEstimate {
  std::vector<double> rho_values;
  std::vector<double> omega_values;  // monotone envelope applied
};

ModulusEstimate modulus_estimate(const SpectralField& theta,
                                 const std::vector<double>& rho_values,
                                 int pairs_per_rho = 10000,
                                 unsigned long long seed = 20240901);

struct BoundCheckPoint {
  UnitVector x{0.0, 0.0, 1.0};
  double lhs = 0.0;  // D(x)
  double rhs = 0.0;  // |grad f(x)|^{2+alpha} / ||f||_inf^alpha
  double ratio = 0.0;
};

struct BoundCheckReport {
  std::vector<BoundCheckPoint> points;
  double fitted_constant = 0.0;  // max rhs/lhs, the empirical c
  int violations = 0;            // points with lhs <= 0
  bool empty_flagged = false;    // no point passed the gradient threshold
};

BoundCheckReport nonlinear_bound_check(const SpectralField& f, double alpha,
                                       const SingularKernel& k, double threshold = 2.0,
                                       int max_points = 8);

struct DecayAuditReport {
  double max_sq_increase = 0.0;  // max positive jump of l2^2 between samples
  bool ok = false;
};

DecayAuditReport l2_decay_audit(const std::vector<DiagnosticsRecord>& records,
                                double tol = 1e-12);

struct GradientMonitorReport {
  double sup_after_t0 = 0.0;
  double ratio_to_initial = 0.0;  // vs max(linf(0), grad_sup(0))
  bool no_blowup_trend = false;   // last-quarter sup <= 1.1 * global sup
};

GradientMonitorReport gradient_monitor(const std::vector<DiagnosticsRecord>& records,
                                       double t0);

struct H3FitReport {
  double fitted_C = 0.0;
  bool stable = false;   // second-half max <= 2x first-half max (decaying runs)
  bool skipped = false;  // stationary zero field
};

H3FitReport h3_inequality_fit(const std::vector<DiagnosticsRecord>& records);

struct TwinRunReport {
  std::vector<double> times;
  std::vector<double> distances;  // L2 distance on the common (coarser) modes
  double gronwall_rate = 0.0;     // K = max grad_sup of the finer run
  double floor = 0.0;             // truncation energy of the finer run above the coarse cutoff
  bool within_envelope = false;   // distance(t) <= (distance(0+) + floor) e^{K t}
};

TwinRunReport twin_run_compare(const SolverConfig& config_a, const SolverConfig& config_b,
                               const InitialCondition& ic);

}  // namespace sqg
