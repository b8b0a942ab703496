// Command-line driver; talks to the core exclusively through the C API.
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "../vendor/CLI11.hpp"
#include "sqg/sqg.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;

int fail_with(sqg_status st) {
  std::fprintf(stderr, "error: %s\n", sqg_last_error());
  return st == SQG_INVALID_ARGUMENT ? kExitUsage : kExitVerification;
}

struct ConfigFlags {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key=value config file");
    auto opt = [this, cmd](const char* flag, const char* key, const char* help) {
      cmd->add_option_function<std::string>(
          flag, [this, key](const std::string& v) { overrides.emplace_back(key, v); }, help);
    };
    opt("--l-max", "L_max", "spectral truncation degree");
    opt("--dt", "dt", "time step");
    opt("--t-end", "t_end", "final time");
    opt("--alpha", "alpha", "dissipation order in (0,2]");
    opt("--nu", "nu", "artificial viscosity");
    opt("--dealias", "dealias", "dealias fraction in (0.5,1]");
    opt("--sample-every", "sample_every", "steps between telemetry samples");
    opt("--seed", "seed", "random seed");
  }

  // File first, flags override; returns nonzero exit code on failure.
  int resolve(sqg_config* cfg, std::string* ic) const {
    sqg_config_defaults(cfg);
    if (!config_path.empty()) {
      char ic_buf[256] = {0};
      const sqg_status st = sqg_config_load(config_path.c_str(), cfg, ic_buf, sizeof(ic_buf));
      if (st != SQG_OK) return fail_with(st);
      if (ic && ic_buf[0] != '\0' && ic->empty()) *ic = ic_buf;
    }
    for (const auto& [key, value] : overrides) {
      const sqg_status st = sqg_config_set(cfg, key.c_str(), value.c_str());
      if (st != SQG_OK) return fail_with(st);
    }
    return kExitOk;
  }
};

int cmd_run(const ConfigFlags& flags, std::string ic, const std::string& telemetry,
            const std::string& snapshot, const std::string& manifest) {
  sqg_config cfg;
  if (int rc = flags.resolve(&cfg, &ic); rc != kExitOk) return rc;
  if (ic.empty()) {
    std::fprintf(stderr, "error: no initial condition (use --ic or an ic= config line)\n");
    return kExitUsage;
  }
  sqg_run_result result;
  const sqg_status st =
      sqg_run(&cfg, ic.c_str(), telemetry.empty() ? nullptr : telemetry.c_str(),
              snapshot.empty() ? nullptr : snapshot.c_str(),
              manifest.empty() ? nullptr : manifest.c_str(), &result);
  if (st != SQG_OK) return fail_with(st);
  std::printf("t=%.6g l2=%.12g linf=%.12g grad_sup=%.12g\n", result.final_time,
              result.final_l2, result.final_linf, result.final_grad_sup);
  if (!std::isnan(result.zonal_error)) {
    std::printf("final-error %.12g\n", result.zonal_error);
  }
  return kExitOk;
}

int cmd_verify(bool quick) {
  auto cb = [](int index, const char* name, int passed, const char* detail, void*) -> int {
    std::printf("[%2d] %-42s %s  (%s)\n", index, name, passed ? "PASS" : "FAIL", detail);
    std::fflush(stdout);
    return 0;
  };
  int failures = 0;
  const sqg_status st = sqg_verify(quick ? 1 : 0, cb, nullptr, &failures);
  if (st != SQG_OK) return fail_with(st);
  std::printf("%s: %d failure(s)\n", failures == 0 ? "OK" : "FAILED", failures);
  return failures == 0 ? kExitOk : kExitVerification;
}

int cmd_operators(double alpha, int degree, std::vector<int> quad_ls) {
  if (quad_ls.empty()) quad_ls = {64, 128, 256};
  std::vector<sqg_operators_row> rows(quad_ls.size());
  const sqg_status st = sqg_operators(alpha, degree, quad_ls.data(),
                                      static_cast<int>(quad_ls.size()), rows.data());
  if (st != SQG_OK) return fail_with(st);
  std::printf("%-8s %-22s %-22s\n", "quad_L", "semigroup_rel_err", "singular_rel_err");
  for (const auto& r : rows) {
    std::printf("%-8d %-22.6g %-22.6g\n", r.quad_lmax, r.semigroup_rel_err,
                r.singular_rel_err);
  }
  return kExitOk;
}

int cmd_twin(const ConfigFlags& flags, std::string ic, int lmax_b, double nu_b,
             const std::string& csv) {
  sqg_config a;
  if (int rc = flags.resolve(&a, &ic); rc != kExitOk) return rc;
  if (ic.empty()) {
    std::fprintf(stderr, "error: no initial condition (use --ic or an ic= config line)\n");
    return kExitUsage;
  }
  sqg_config b = a;
  if (lmax_b > 0) b.l_max = lmax_b;
  if (nu_b >= 0.0) b.nu = nu_b;
  sqg_twin_result result;
  const sqg_status st =
      sqg_twin(&a, &b, ic.c_str(), csv.empty() ? nullptr : csv.c_str(), &result);
  if (st != SQG_OK) return fail_with(st);
  std::printf("final_distance=%.12g gronwall_rate=%.6g floor=%.6g envelope=%s\n",
              result.final_distance, result.gronwall_rate, result.floor,
              result.within_envelope ? "ok" : "violated");
  return result.within_envelope ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral SQG simulator and fractional-operator toolkit on the unit sphere"};
  app.require_subcommand(1);

  ConfigFlags run_flags, twin_flags;
  std::string run_ic, twin_ic;
  std::string telemetry, snapshot, manifest, twin_csv;
  bool quick = false;
  double op_alpha = 1.0;
  int op_degree = 5;
  std::vector<int> op_quad_ls;
  int twin_lmax_b = 0;
  double twin_nu_b = -1.0;

  CLI::App* run = app.add_subcommand("run", "integrate the SQG equation");
  run_flags.attach(run);
  run->add_option("--ic", run_ic, "initial condition (zonal:L | random:LO,HI,AMP,SEED | "
                                  "pair:SEP,WIDTH,AMP)");
  run->add_option("--telemetry", telemetry, "telemetry CSV output path");
  run->add_option("--snapshot", snapshot, "final-state snapshot output path");
  run->add_option("--manifest", manifest, "JSON run manifest output path");

  CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_flag("--quick", quick, "shorter horizons for a fast smoke check");

  CLI::App* operators = app.add_subcommand("operators", "three-way operator agreement table");
  operators->add_option("--alpha", op_alpha, "fractional order in (0,2)");
  operators->add_option("--degree", op_degree, "harmonic degree of the test field");
  operators->add_option("--quad-l", op_quad_ls, "quadrature truncations (default 64 128 256)");

  CLI::App* twin = app.add_subcommand("twin", "twin-run uniqueness comparison");
  twin_flags.attach(twin);
  twin->add_option("--ic", twin_ic, "shared initial condition");
  twin->add_option("--l-max-b", twin_lmax_b, "truncation of the second run");
  twin->add_option("--nu-b", twin_nu_b, "viscosity of the second run");
  twin->add_option("--csv", twin_csv, "time,l2_distance series output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (run->parsed()) return cmd_run(run_flags, run_ic, telemetry, snapshot, manifest);
  if (verify->parsed()) return cmd_verify(quick);
  if (operators->parsed()) return cmd_operators(op_alpha, op_degree, op_quad_ls);
  if (twin->parsed()) return cmd_twin(twin_flags, twin_ic, twin_lmax_b, twin_nu_b, twin_csv);
  return kExitUsage;
}
