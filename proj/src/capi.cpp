#include "sqg/sqg.h"

#include <chrono>
#include <cmath>
#include <cstring>
#include <ctime>
#include <fstream>
#include <limits>
#include <memory>
#include <string>

#include "sqg/diagnostics.hpp"
#include "sqg/errors.hpp"
#include "sqg/io.hpp"
#include "sqg/solver.hpp"
#include "sqg/verification.hpp"

namespace {

thread_local std::string g_last_error = "no error";

sqg_status map_code(sqg::errc c) {
  switch (c) {
    case sqg::errc::ok:
      return SQG_OK;
    case sqg::errc::invalid_argument:
      return SQG_INVALID_ARGUMENT;
    case sqg::errc::precondition:
      return SQG_PRECONDITION;
    case sqg::errc::cfl_violation:
      return SQG_CFL_VIOLATION;
    case sqg::errc::io_failure:
      return SQG_IO_FAILURE;
    case sqg::errc::bad_magic:
      return SQG_BAD_MAGIC;
    case sqg::errc::bad_version:
      return SQG_BAD_VERSION;
    case sqg::errc::truncated:
      return SQG_TRUNCATED;
    case sqg::errc::internal:
      return SQG_INTERNAL;
  }
  return SQG_INTERNAL;
}

template <typename Fn>
sqg_status guarded(Fn&& fn) {
  try {
    fn();
    return SQG_OK;
  } catch (const sqg::error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SQG_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return SQG_INTERNAL;
  }
}

sqg::SolverConfig to_cpp(const sqg_config& c) {
  sqg::SolverConfig out;
  out.lmax = c.l_max;
  out.dt = c.dt;
  out.t_end = c.t_end;
  out.alpha = c.alpha;
  out.nu = c.nu;
  out.dealias_fraction = c.dealias;
  out.sample_every = c.sample_every;
  out.seed = c.seed;
  return out;
}

void from_cpp(const sqg::SolverConfig& c, sqg_config* out) {
  out->l_max = c.lmax;
  out->dt = c.dt;
  out->t_end = c.t_end;
  out->alpha = c.alpha;
  out->nu = c.nu;
  out->dealias = c.dealias_fraction;
  out->sample_every = c.sample_every;
  out->seed = c.seed;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

struct sqg_state {
  sqg::SimulationState state;
  double alpha = 1.0;
};

extern "C" {

const char* sqg_last_error(void) { return g_last_error.c_str(); }

const char* sqg_version(void) { return "sqg-sphere 1.0.0"; }

void sqg_config_defaults(sqg_config* cfg) {
  if (cfg) from_cpp(sqg::SolverConfig{}, cfg);
}

sqg_status sqg_config_set(sqg_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    sqg::require(cfg && key && value, sqg::errc::invalid_argument,
                 "sqg_config_set: null argument");
    sqg::require(std::strcmp(key, "ic") != 0, sqg::errc::invalid_argument,
                 "sqg_config_set: the initial condition is passed to the run call");
    sqg::ParsedConfig parsed;
    parsed.solver = to_cpp(*cfg);
    sqg::apply_config_key(parsed, key, value);
    from_cpp(parsed.solver, cfg);
  });
}

sqg_status sqg_config_load(const char* path, sqg_config* cfg, char* ic_buf, size_t ic_buf_len) {
  return guarded([&] {
    sqg::require(path && cfg, sqg::errc::invalid_argument, "sqg_config_load: null argument");
    const sqg::ParsedConfig parsed = sqg::parse_config_file(path);
    from_cpp(parsed.solver, cfg);
    if (ic_buf && ic_buf_len > 0) {
      sqg::require(parsed.ic_text.size() + 1 <= ic_buf_len, sqg::errc::invalid_argument,
                   "sqg_config_load: ic buffer too small");
      std::memcpy(ic_buf, parsed.ic_text.c_str(), parsed.ic_text.size() + 1);
    }
  });
}

sqg_status sqg_run(const sqg_config* cfg, const char* initial_condition,
                   const char* telemetry_path, const char* snapshot_path,
                   const char* manifest_path, sqg_run_result* result) {
  std::string started = utc_now();
  return guarded([&] {
    sqg::require(cfg && initial_condition, sqg::errc::invalid_argument,
                 "sqg_run: null argument");
    const sqg::SolverConfig c = to_cpp(*cfg);
    c.validate();
    const sqg::InitialCondition ic = sqg::InitialCondition::parse(initial_condition);

    std::unique_ptr<sqg::TelemetryWriter> telemetry;
    if (telemetry_path) telemetry = std::make_unique<sqg::TelemetryWriter>(telemetry_path);

    sqg::DiagnosticsRecord last{};
    sqg::RunSinks sinks;
    sinks.on_sample = [&](const sqg::SimulationState& s) {
      last = sqg::record(s, c.alpha);
      if (telemetry) telemetry->append(last);
    };
    sinks.on_abort = [&](const sqg::SimulationState& s) {
      if (telemetry) telemetry->flush();
      if (snapshot_path) sqg::write_snapshot(s, c.alpha, snapshot_path);
    };

    const sqg::SimulationState final_state = sqg::run(ic, c, sinks);
    if (telemetry) telemetry->flush();
    if (snapshot_path) sqg::write_snapshot(final_state, c.alpha, snapshot_path);
    if (manifest_path) {
      sqg::RunManifest manifest;
      manifest.config = c;
      manifest.ic_text = ic.to_string();
      manifest.code_version = sqg_version();
      manifest.started_utc = started;
      manifest.finished_utc = utc_now();
      if (telemetry_path) manifest.add_file(telemetry_path);
      if (snapshot_path) manifest.add_file(snapshot_path);
      manifest.write(manifest_path);
    }
    if (result) {
      result->final_time = final_state.time;
      result->final_l2 = last.l2;
      result->final_linf = last.linf;
      result->final_grad_sup = last.grad_sup;
      result->zonal_error = std::numeric_limits<double>::quiet_NaN();
      if (ic.kind == sqg::InitialCondition::Kind::zonal_harmonic) {
        auto grid = sqg::Grid::make(c.lmax);
        const double lam = std::pow(static_cast<double>(ic.zonal_l) * (ic.zonal_l + 1),
                                    0.5 * c.alpha) +
                           c.nu * ic.zonal_l * (ic.zonal_l + 1);
        sqg::SpectralField exact = ic.build(c.lmax);
        exact *= std::exp(-lam * final_state.time);
        sqg::SpectralField diff = final_state.theta;
        diff -= exact;
        result->zonal_error = sqg::synthesize(diff, grid).max_abs();
      }
    }
  });
}

sqg_status sqg_state_read(const char* path, sqg_state** out) {
  return guarded([&] {
    sqg::require(path && out, sqg::errc::invalid_argument, "sqg_state_read: null argument");
    auto handle = std::make_unique<sqg_state>();
    handle->state = sqg::read_snapshot(path, &handle->alpha);
    *out = handle.release();
  });
}

sqg_status sqg_state_write(const sqg_state* s, const char* path) {
  return guarded([&] {
    sqg::require(s && path, sqg::errc::invalid_argument, "sqg_state_write: null argument");
    sqg::write_snapshot(s->state, s->alpha, path);
  });
}

void sqg_state_free(sqg_state* s) { delete s; }

int sqg_state_lmax(const sqg_state* s) { return s ? s->state.theta.lmax() : -1; }
double sqg_state_time(const sqg_state* s) {
  return s ? s->state.time : std::numeric_limits<double>::quiet_NaN();
}
double sqg_state_alpha(const sqg_state* s) {
  return s ? s->alpha : std::numeric_limits<double>::quiet_NaN();
}
unsigned long long sqg_state_step(const sqg_state* s) { return s ? s->state.step_index : 0; }

sqg_status sqg_state_diagnostics(const sqg_state* s, double out[9]) {
  return guarded([&] {
    sqg::require(s && out, sqg::errc::invalid_argument,
                 "sqg_state_diagnostics: null argument");
    const sqg::DiagnosticsRecord r = sqg::record(s->state, s->alpha);
    out[0] = r.time;
    out[1] = r.l2;
    out[2] = r.linf;
    out[3] = r.grad_sup;
    out[4] = r.h1;
    out[5] = r.h1_5;
    out[6] = r.h2;
    out[7] = r.h3;
    out[8] = r.maxpoint_lambda;
  });
}

sqg_status sqg_verify(int quick, sqg_criterion_cb cb, void* user, int* failures) {
  return guarded([&] {
    const std::vector<sqg::CriterionResult> results = sqg::run_acceptance(quick != 0);
    int failed = 0;
    for (const auto& r : results) {
      if (!r.passed) ++failed;
      if (cb && cb(r.index, r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str(), user) != 0) {
        break;
      }
    }
    if (failures) *failures = failed;
  });
}

sqg_status sqg_operators(double alpha, int degree, const int* quad_ls, int n,
                         sqg_operators_row* rows) {
  return guarded([&] {
    sqg::require(quad_ls && rows && n > 0, sqg::errc::invalid_argument,
                 "sqg_operators: null argument");
    const std::vector<sqg::OperatorsRow> table =
        sqg::operators_table(alpha, degree, std::vector<int>(quad_ls, quad_ls + n));
    for (int i = 0; i < n; ++i) {
      rows[i].quad_lmax = table[i].quad_lmax;
      rows[i].semigroup_rel_err = table[i].semigroup_rel_err;
      rows[i].singular_rel_err = table[i].singular_rel_err;
    }
  });
}

sqg_status sqg_twin(const sqg_config* a, const sqg_config* b, const char* initial_condition,
                    const char* csv_path, sqg_twin_result* result) {
  return guarded([&] {
    sqg::require(a && b && initial_condition, sqg::errc::invalid_argument,
                 "sqg_twin: null argument");
    const sqg::InitialCondition ic = sqg::InitialCondition::parse(initial_condition);
    const sqg::TwinRunReport rep = sqg::twin_run_compare(to_cpp(*a), to_cpp(*b), ic);
    if (csv_path) {
      std::ofstream out(csv_path);
      sqg::require(out.good(), sqg::errc::io_failure,
                   std::string("twin: cannot open '") + csv_path + "'");
      out << "time,l2_distance\n";
      for (size_t i = 0; i < rep.times.size(); ++i) {
        out << rep.times[i] << ',' << rep.distances[i] << '\n';
      }
    }
    if (result) {
      result->final_distance = rep.distances.back();
      result->gronwall_rate = rep.gronwall_rate;
      result->floor = rep.floor;
      result->within_envelope = rep.within_envelope ? 1 : 0;
    }
  });
}

}  // extern "C"
