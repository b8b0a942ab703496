#include "sqg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "sqg/errors.hpp"
#include "sqg/grid.hpp"

namespace sqg {

namespace {
constexpr double kPi = std::numbers::pi;

UnitVector node_point(const Grid& g, int i, int j) {
  return UnitVector::from_angles(g.colatitudes()[i], g.longitude(j));
}
}  // namespace

DiagnosticsRecord record(const SimulationState& s, double alpha, int oversample) {
  require(oversample >= 1, errc::invalid_argument, "record: oversample must be >= 1");
  const int lmax = s.theta.lmax();
  auto grid = Grid::make(std::max(2, oversample * lmax));
  const PhysicalField f = synthesize(s.theta, grid);
  const VelocityField g = surface_gradient(s.theta, grid);

  DiagnosticsRecord r;
  r.time = s.time;
  r.l2 = s.theta.l2_norm();
  r.h1 = s.theta.sobolev_norm(1.0);
  r.h1_5 = s.theta.sobolev_norm(1.5);
  r.h2 = s.theta.sobolev_norm(2.0);
  r.h3 = s.theta.sobolev_norm(3.0);

  int arg_i = 0, arg_j = 0, garg_i = 0, garg_j = 0;
  double best = -1.0, gbest = -1.0;
  for (int i = 0; i < grid->n_lat(); ++i) {
    for (int j = 0; j < grid->n_lon(); ++j) {
      const double v = std::abs(f.at(i, j));
      if (v > best) {
        best = v;
        arg_i = i;
        arg_j = j;
      }
      const size_t idx = static_cast<size_t>(i) * grid->n_lon() + j;
      const double sp = std::hypot(g.u_colat[idx], g.u_lon[idx]);
      if (sp > gbest) {
        gbest = sp;
        garg_i = i;
        garg_j = j;
      }
    }
  }
  r.linf = best;
  r.grad_sup = gbest;
  r.grad_argmax = node_point(*grid, garg_i, garg_j);

  const double theta_at_max = f.at(arg_i, arg_j);
  if (theta_at_max != 0.0) {
    const PhysicalField lam = synthesize(lambda_power(s.theta, alpha), grid);
    r.maxpoint_lambda = (theta_at_max > 0.0 ? 1.0 : -1.0) * lam.at(arg_i, arg_j);
  }
  return r;
}

double max_principle_check(const SpectralField& theta, double alpha) {
  require(theta.l2_norm() > 0.0, errc::precondition, "max_principle_check: trivial field");
  SimulationState s;
  s.theta = theta;
  return record(s, alpha, 2).maxpoint_lambda;
}

ModulusEstimate modulus_estimate(const SpectralField& theta,
                                 const std::vector<double>& rho_values, int pairs_per_rho,
                                 unsigned long long seed) {
  for (double rho : rho_values) {
    require(rho > 0.0 && rho < kPi, errc::invalid_argument,
            "modulus_estimate: rho must lie in (0, pi)");
  }
  require(pairs_per_rho >= 1, errc::invalid_argument, "modulus_estimate: need >= 1 pair");

  ModulusEstimate est;
  est.rho_values = rho_values;
  std::sort(est.rho_values.begin(), est.rho_values.end());
  est.omega_values.resize(est.rho_values.size(), 0.0);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (size_t r = 0; r < est.rho_values.size(); ++r) {
    const double rho = est.rho_values[r];
    double sup = 0.0;
    for (int p = 0; p < pairs_per_rho; ++p) {
      const UnitVector x = UnitVector::normalized(gauss(rng), gauss(rng), gauss(rng));
      // Random tangent direction at x via Gram-Schmidt.
      UnitVector v = UnitVector::normalized(gauss(rng), gauss(rng), gauss(rng));
      double t0 = v.x - x.dot(v) * x.x, t1 = v.y - x.dot(v) * x.y, t2 = v.z - x.dot(v) * x.z;
      const double tn = std::sqrt(t0 * t0 + t1 * t1 + t2 * t2);
      if (tn < 1e-8) continue;
      t0 /= tn;
      t1 /= tn;
      t2 /= tn;
      // Distance within 10% of rho, capped below pi.
      const double d = std::min(rho * (1.0 + 0.1 * unif(rng)), kPi - 1e-12);
      const UnitVector y = UnitVector::normalized(std::cos(d) * x.x + std::sin(d) * t0,
                                                  std::cos(d) * x.y + std::sin(d) * t1,
                                                  std::cos(d) * x.z + std::sin(d) * t2);
      sup = std::max(sup, std::abs(point_evaluate(theta, x) - point_evaluate(theta, y)));
    }
    est.omega_values[r] = sup;
  }
  for (size_t r = 1; r < est.omega_values.size(); ++r) {
    est.omega_values[r] = std::max(est.omega_values[r], est.omega_values[r - 1]);
  }
  return est;
}

BoundCheckReport nonlinear_bound_check(const SpectralField& f, double alpha,
                                       const SingularKernel& k, double threshold,
                                       int max_points) {
  require(threshold > 0.0, errc::invalid_argument,
          "nonlinear_bound_check: threshold must be positive");
  require(max_points >= 1, errc::invalid_argument,
          "nonlinear_bound_check: max_points must be >= 1");
  const int deg = std::max(f.degree(1e-13), 2);
  auto grid = Grid::make(2 * deg);
  const double sup = synthesize(f, grid).max_abs();
  const VelocityField g = surface_gradient(f, grid);

  std::vector<std::pair<int, int>> candidates;
  for (int i = 0; i < grid->n_lat(); ++i) {
    for (int j = 0; j < grid->n_lon(); ++j) {
      const size_t idx = static_cast<size_t>(i) * grid->n_lon() + j;
      if (std::hypot(g.u_colat[idx], g.u_lon[idx]) >= threshold * sup) {
        candidates.emplace_back(i, j);
      }
    }
  }
  BoundCheckReport rep;
  if (candidates.empty()) {
    rep.empty_flagged = true;
    return rep;
  }
  const size_t stride = std::max<size_t>(1, candidates.size() / max_points);
  for (size_t c = 0; c < candidates.size() && rep.points.size() < static_cast<size_t>(max_points);
       c += stride) {
    const auto [i, j] = candidates[c];
    const size_t idx = static_cast<size_t>(i) * grid->n_lon() + j;
    BoundCheckPoint pt;
    pt.x = node_point(*grid, i, j);
    pt.lhs = dirichlet_D(f, pt.x, k);
    const double gn = std::hypot(g.u_colat[idx], g.u_lon[idx]);
    pt.rhs = std::pow(gn, 2.0 + alpha) / std::pow(sup, alpha);
    pt.ratio = pt.lhs > 0.0 ? pt.rhs / pt.lhs : std::numeric_limits<double>::infinity();
    if (pt.lhs <= 0.0) rep.violations += 1;
    rep.fitted_constant = std::max(rep.fitted_constant, pt.ratio);
    rep.points.push_back(pt);
  }
  return rep;
}

DecayAuditReport l2_decay_audit(const std::vector<DiagnosticsRecord>& records, double tol) {
  require(records.size() >= 1, errc::precondition, "l2_decay_audit: no records");
  DecayAuditReport rep;
  for (size_t i = 1; i < records.size(); ++i) {
    rep.max_sq_increase = std::max(
        rep.max_sq_increase, records[i].l2 * records[i].l2 - records[i - 1].l2 * records[i - 1].l2);
  }
  rep.ok = rep.max_sq_increase <= tol;
  return rep;
}

GradientMonitorReport gradient_monitor(const std::vector<DiagnosticsRecord>& records,
                                       double t0) {
  require(!records.empty(), errc::precondition, "gradient_monitor: no records");
  GradientMonitorReport rep;
  double global_sup = 0.0, tail_sup = 0.0;
  bool any_tail = false;
  const double t_last = records.back().time;
  const double quarter_start = t_last - 0.25 * (t_last - records.front().time);
  double last_quarter_sup = 0.0;
  for (const auto& r : records) {
    global_sup = std::max(global_sup, r.grad_sup);
    if (r.time >= t0) {
      tail_sup = std::max(tail_sup, r.grad_sup);
      any_tail = true;
    }
    if (r.time >= quarter_start) last_quarter_sup = std::max(last_quarter_sup, r.grad_sup);
  }
  require(any_tail, errc::precondition, "gradient_monitor: no records past t0");
  rep.sup_after_t0 = tail_sup;
  const double denom = std::max(records.front().linf, records.front().grad_sup);
  rep.ratio_to_initial = denom > 0.0 ? tail_sup / denom : 0.0;
  rep.no_blowup_trend = last_quarter_sup <= 1.1 * global_sup + 1e-14;
  return rep;
}

H3FitReport h3_inequality_fit(const std::vector<DiagnosticsRecord>& records) {
  require(records.size() >= 3, errc::precondition, "h3_inequality_fit: fewer than 3 samples");
  H3FitReport rep;
  double h3_max = 0.0;
  for (const auto& r : records) h3_max = std::max(h3_max, r.h3);
  if (h3_max < 1e-14) {
    rep.skipped = true;
    return rep;
  }
  std::vector<double> cs;
  for (size_t i = 0; i + 1 < records.size(); ++i) {
    const double dt = records[i + 1].time - records[i].time;
    const double h3 = records[i].h3;
    if (dt <= 0.0 || h3 < 1e-14) continue;
    const double dsq = records[i + 1].h3 * records[i + 1].h3 - h3 * h3;
    cs.push_back(dsq / dt / (h3 * h3 * h3));
  }
  require(!cs.empty(), errc::precondition, "h3_inequality_fit: no usable increments");
  rep.fitted_C = *std::max_element(cs.begin(), cs.end());
  const size_t mid = cs.size() / 2;
  const double first = *std::max_element(cs.begin(), cs.begin() + std::max<size_t>(mid, 1));
  const double second = *std::max_element(cs.begin() + mid, cs.end());
  rep.stable = std::isfinite(rep.fitted_C) &&
               second <= std::max(2.0 * first, first) + 1e-12;
  return rep;
}

TwinRunReport twin_run_compare(const SolverConfig& config_a, const SolverConfig& config_b,
                               const InitialCondition& ic) {
  require(config_a.dt == config_b.dt && config_a.t_end == config_b.t_end &&
              config_a.alpha == config_b.alpha && config_a.sample_every == config_b.sample_every,
          errc::invalid_argument,
          "twin_run_compare: configs may differ in resolution or nu only");

  struct Sampled {
    std::vector<double> times;
    std::vector<SpectralField> thetas;
  };
  auto capture = [](const SolverConfig& c, const InitialCondition& icond) {
    Sampled s;
    RunSinks sinks;
    sinks.on_sample = [&s](const SimulationState& st) {
      s.times.push_back(st.time);
      s.thetas.push_back(st.theta);
    };
    run(icond, c, sinks);
    return s;
  };
  const Sampled a = capture(config_a, ic);
  const Sampled b = capture(config_b, ic);
  require(a.times.size() == b.times.size(), errc::internal,
          "twin_run_compare: sample trains differ in length");

  const bool b_finer = config_b.lmax >= config_a.lmax;
  const SolverConfig& coarse = b_finer ? config_a : config_b;
  const Sampled& fine = b_finer ? b : a;
  const int lc = coarse.lmax;

  TwinRunReport rep;
  rep.times = a.times;
  for (size_t i = 0; i < a.times.size(); ++i) {
    SpectralField diff = b.thetas[i].truncated(lc);
    diff -= a.thetas[i].truncated(lc);
    rep.distances.push_back(diff.l2_norm());

    // Discretization floor: energy the finer run carries above the coarse
    // de-aliasing cutoff, invisible to the coarse run by construction.
    double above = 0.0;
    const int cutoff = coarse.dealias_cutoff();
    for (int l = cutoff + 1; l <= fine.thetas[i].lmax(); ++l) {
      for (int m = -l; m <= l; ++m) above += std::norm(fine.thetas[i].at(l, m));
    }
    rep.floor = std::max(rep.floor, std::sqrt(above));

    SimulationState st;
    st.time = fine.times[i];
    st.theta = fine.thetas[i];
    rep.gronwall_rate = std::max(rep.gronwall_rate, record(st, config_a.alpha).grad_sup);
  }
  rep.within_envelope = true;
  const double d0 = rep.distances.front();
  for (size_t i = 0; i < rep.distances.size(); ++i) {
    const double envelope =
        (d0 + rep.floor) * std::exp(rep.gronwall_rate * (rep.times[i] - rep.times.front()));
    if (rep.distances[i] > envelope * (1.0 + 1e-9) + 1e-14) {
      rep.within_envelope = false;
      break;
    }
  }
  return rep;
}

}  // namespace sqg
