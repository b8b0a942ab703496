#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "sqg/diagnostics.hpp"
#include "sqg/solver.hpp"

namespace sqg {

// Binary snapshot, little-endian: magic "SQG2", version u32 = 1, L_max u32,
// alpha f64, time f64, step u64, then (L_max+1)^2 coefficients as
// (re f64, im f64), l ascending, m from -l to l.
void write_snapshot(const SimulationState& s, double alpha, const std::string& path);
// alpha_out receives the stored dissipation order.
SimulationState read_snapshot(const std::string& path, double* alpha_out = nullptr);

class TelemetryWriter {
 public:
  explicit TelemetryWriter(const std::string& path);
  void append(const DiagnosticsRecord& r);
  void flush();

 private:
  std::ofstream out_;
};

std::string telemetry_row(const DiagnosticsRecord& r);
inline const char* telemetry_header() {
  return "time,l2,linf,grad_sup,h1,h1_5,h2,h3,maxpoint_lambda";
}

// Flat key=value config with '#' comments.  Recognized keys: L_max, dt,
// t_end, alpha, nu, dealias, sample_every, seed, ic.  Unknown keys are
// rejected with the list of valid keys; invariant violations are rejected
// with the violated invariant.
struct ParsedConfig {
  SolverConfig solver;
  std::string ic_text;  // empty when the file does not set one
};

ParsedConfig parse_config_text(const std::string& text);
ParsedConfig parse_config_file(const std::string& path);
void apply_config_key(ParsedConfig& cfg, const std::string& key, const std::string& value);

struct RunManifest {
  SolverConfig config;
  std::string ic_text;
  std::string code_version;
  std::string started_utc, finished_utc;
  std::vector<std::pair<std::string, unsigned long>> files;  // path, crc32

  void add_file(const std::string& path);  // computes the checksum
  void write(const std::string& path) const;
};

unsigned long file_crc32(const std::string& path);

}  // namespace sqg
