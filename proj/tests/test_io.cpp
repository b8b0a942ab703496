#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "sqg/io.hpp"
#include "vendor/doctest.h"
#include "vendor/json.hpp"

using namespace sqg;
namespace {

std::string temp_path(const std::string& name) { return "/tmp/sqg_io_test_" + name; }

SimulationState sample_state() {
  SimulationState s;
  s.time = 0.725;
  s.step_index = 725;
  s.theta = InitialCondition::parse("random:2,10,1.0,77").build(12);
  return s;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}
}  // namespace

TEST_CASE("snapshot round trip is bit exact") {
  const std::string path = temp_path("roundtrip.snap");
  const SimulationState s = sample_state();
  write_snapshot(s, 1.25, path);
  double alpha = 0.0;
  const SimulationState r = read_snapshot(path, &alpha);
  CHECK(alpha == 1.25);
  CHECK(r.time == s.time);
  CHECK(r.step_index == s.step_index);
  CHECK(r.theta.lmax() == s.theta.lmax());
  for (int l = 0; l <= s.theta.lmax(); ++l) {
    for (int m = -l; m <= l; ++m) CHECK(r.theta.at(l, m) == s.theta.at(l, m));
  }
  std::remove(path.c_str());
}

TEST_CASE("snapshot corruption yields distinct errors") {
  const std::string path = temp_path("corrupt.snap");
  write_snapshot(sample_state(), 1.0, path);
  const std::string good = slurp(path);

  std::string bad_magic = good;
  bad_magic[0] = 'X';
  spit(path, bad_magic);
  try {
    read_snapshot(path);
    FAIL("expected bad_magic");
  } catch (const error& e) {
    CHECK(e.code() == errc::bad_magic);
  }

  std::string bad_version = good;
  bad_version[4] = 9;  // version field
  spit(path, bad_version);
  try {
    read_snapshot(path);
    FAIL("expected bad_version");
  } catch (const error& e) {
    CHECK(e.code() == errc::bad_version);
  }

  spit(path, good.substr(0, good.size() / 2));
  try {
    read_snapshot(path);
    FAIL("expected truncated");
  } catch (const error& e) {
    CHECK(e.code() == errc::truncated);
  }

  try {
    read_snapshot(temp_path("does_not_exist.snap"));
    FAIL("expected io_failure");
  } catch (const error& e) {
    CHECK(e.code() == errc::io_failure);
  }
  std::remove(path.c_str());
}

TEST_CASE("telemetry format") {
  CHECK(std::string(telemetry_header()) == "time,l2,linf,grad_sup,h1,h1_5,h2,h3,maxpoint_lambda");
  DiagnosticsRecord r;
  r.time = 0.5;
  r.l2 = 1.0;
  const std::string row = telemetry_row(r);
  CHECK(row.substr(0, 6) == "0.5,1,");

  const std::string path = temp_path("telemetry.csv");
  {
    TelemetryWriter w(path);
    w.append(r);
    w.flush();
  }
  const std::string contents = slurp(path);
  CHECK(contents == std::string(telemetry_header()) + "\n" + row + "\n");
  std::remove(path.c_str());
}

TEST_CASE("config parsing") {
  const ParsedConfig defaults = parse_config_text("");
  CHECK(defaults.solver.lmax == 64);
  CHECK(defaults.solver.dt == 1e-3);
  CHECK(defaults.solver.alpha == 1.0);
  CHECK(defaults.solver.nu == 0.0);
  CHECK(defaults.solver.dealias_fraction == doctest::Approx(2.0 / 3.0));

  const ParsedConfig cfg = parse_config_text(
      "# a comment\nalpha = 1.5\nL_max=32\n\nic = zonal:2  # trailing comment\n");
  CHECK(cfg.solver.alpha == 1.5);
  CHECK(cfg.solver.lmax == 32);
  CHECK(cfg.ic_text == "zonal:2");

  try {
    parse_config_text("dt=-1\n");
    FAIL("expected rejection");
  } catch (const error& e) {
    CHECK(std::string(e.what()).find("dt must be positive") != std::string::npos);
  }

  try {
    parse_config_text("lmax=32\n");
    FAIL("expected unknown-key rejection");
  } catch (const error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("unknown key") != std::string::npos);
    CHECK(msg.find("L_max") != std::string::npos);  // lists the valid keys
  }

  CHECK_THROWS_AS(parse_config_text("alpha\n"), error);
  CHECK_THROWS_AS(parse_config_text("alpha=fast\n"), error);
}

TEST_CASE("run manifest lists files with checksums") {
  const std::string data_path = temp_path("payload.bin");
  spit(data_path, "some payload bytes");
  const std::string manifest_path = temp_path("manifest.json");

  RunManifest m;
  m.config = SolverConfig{};
  m.ic_text = "zonal:2";
  m.code_version = "test";
  m.started_utc = "2026-01-01T00:00:00Z";
  m.finished_utc = "2026-01-01T00:00:01Z";
  m.add_file(data_path);
  m.write(manifest_path);

  const nlohmann::json j = nlohmann::json::parse(slurp(manifest_path));
  CHECK(j["ic"] == "zonal:2");
  CHECK(j["config"]["L_max"] == 64);
  CHECK(j["files"].size() == 1);
  CHECK(j["files"][0]["path"] == data_path);
  CHECK(j["files"][0]["crc32"] == file_crc32(data_path));
  std::remove(data_path.c_str());
  std::remove(manifest_path.c_str());
}
