#include "sqg/io.hpp"

#include <zlib.h>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <map>
#include <sstream>

#include "../vendor/json.hpp"
#include "sqg/errors.hpp"

namespace sqg {

namespace {
constexpr char kMagic[4] = {'S', 'Q', 'G', '2'};
constexpr uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  require(static_cast<size_t>(in.gcount()) == sizeof(v), errc::truncated,
          "snapshot: truncated payload");
  return v;
}

std::string format17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

void write_snapshot(const SimulationState& s, double alpha, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), errc::io_failure, "snapshot: cannot open '" + path + "' for writing");
  out.write(kMagic, 4);
  put<uint32_t>(out, kVersion);
  put<uint32_t>(out, static_cast<uint32_t>(s.theta.lmax()));
  put<double>(out, alpha);
  put<double>(out, s.time);
  put<uint64_t>(out, s.step_index);
  for (int l = 0; l <= s.theta.lmax(); ++l) {
    for (int m = -l; m <= l; ++m) {
      put<double>(out, s.theta.at(l, m).real());
      put<double>(out, s.theta.at(l, m).imag());
    }
  }
  out.flush();
  require(out.good(), errc::io_failure, "snapshot: write to '" + path + "' failed");
}

SimulationState read_snapshot(const std::string& path, double* alpha_out) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), errc::io_failure, "snapshot: cannot open '" + path + "'");
  char magic[4];
  in.read(magic, 4);
  require(in.gcount() == 4, errc::truncated, "snapshot: truncated payload");
  require(std::memcmp(magic, kMagic, 4) == 0, errc::bad_magic,
          "snapshot: bad magic in '" + path + "'");
  const auto version = get<uint32_t>(in);
  require(version == kVersion, errc::bad_version,
          "snapshot: unsupported format version " + std::to_string(version));
  const auto lmax = get<uint32_t>(in);
  require(lmax >= 2 && lmax <= 2048, errc::truncated, "snapshot: implausible L_max");
  const double alpha = get<double>(in);
  SimulationState s;
  s.time = get<double>(in);
  s.step_index = get<uint64_t>(in);
  s.theta = SpectralField(static_cast<int>(lmax));
  for (int l = 0; l <= s.theta.lmax(); ++l) {
    for (int m = -l; m <= l; ++m) {
      const double re = get<double>(in);
      const double im = get<double>(in);
      s.theta.at(l, m) = {re, im};
    }
  }
  if (alpha_out) *alpha_out = alpha;
  return s;
}

TelemetryWriter::TelemetryWriter(const std::string& path) : out_(path) {
  require(out_.good(), errc::io_failure, "telemetry: cannot open '" + path + "'");
  out_ << telemetry_header() << "\n";
}

std::string telemetry_row(const DiagnosticsRecord& r) {
  std::ostringstream os;
  os << format17(r.time) << ',' << format17(r.l2) << ',' << format17(r.linf) << ','
     << format17(r.grad_sup) << ',' << format17(r.h1) << ',' << format17(r.h1_5) << ','
     << format17(r.h2) << ',' << format17(r.h3) << ',' << format17(r.maxpoint_lambda);
  return os.str();
}

void TelemetryWriter::append(const DiagnosticsRecord& r) { out_ << telemetry_row(r) << "\n"; }

void TelemetryWriter::flush() {
  out_.flush();
  require(out_.good(), errc::io_failure, "telemetry: write failed");
}

void apply_config_key(ParsedConfig& cfg, const std::string& key, const std::string& value) {
  auto as_double = [&](const char* invariant) {
    try {
      size_t used = 0;
      const double v = std::stod(value, &used);
      require(used == value.size(), errc::invalid_argument,
              std::string("config: ") + invariant);
      return v;
    } catch (const std::logic_error&) {
      throw error(errc::invalid_argument,
                  "config: value '" + value + "' for key '" + key + "' is not numeric");
    }
  };
  if (key == "L_max") {
    const double v = as_double("L_max must be an integer");
    cfg.solver.lmax = static_cast<int>(v);
    require(cfg.solver.lmax >= 2 && cfg.solver.lmax <= 2048, errc::invalid_argument,
            "config: L_max must lie in [2, 2048]");
  } else if (key == "dt") {
    cfg.solver.dt = as_double("dt must be numeric");
    require(cfg.solver.dt > 0.0, errc::invalid_argument, "config: dt must be positive");
  } else if (key == "t_end") {
    cfg.solver.t_end = as_double("t_end must be numeric");
    require(cfg.solver.t_end >= 0.0, errc::invalid_argument,
            "config: t_end must be nonnegative");
  } else if (key == "alpha") {
    cfg.solver.alpha = as_double("alpha must be numeric");
    require(cfg.solver.alpha > 0.0 && cfg.solver.alpha <= 2.0, errc::invalid_argument,
            "config: alpha must lie in (0, 2]");
  } else if (key == "nu") {
    cfg.solver.nu = as_double("nu must be numeric");
    require(cfg.solver.nu >= 0.0, errc::invalid_argument, "config: nu must be nonnegative");
  } else if (key == "dealias") {
    cfg.solver.dealias_fraction = as_double("dealias must be numeric");
    require(cfg.solver.dealias_fraction > 0.5 && cfg.solver.dealias_fraction <= 1.0,
            errc::invalid_argument, "config: dealias must lie in (0.5, 1]");
  } else if (key == "sample_every") {
    cfg.solver.sample_every = static_cast<int>(as_double("sample_every must be an integer"));
    require(cfg.solver.sample_every >= 1, errc::invalid_argument,
            "config: sample_every must be >= 1");
  } else if (key == "seed") {
    cfg.solver.seed = static_cast<unsigned long long>(as_double("seed must be an integer"));
  } else if (key == "ic") {
    cfg.ic_text = value;
    InitialCondition::parse(value);  // validate eagerly
  } else {
    throw error(errc::invalid_argument,
                "config: unknown key '" + key +
                    "' (valid keys: L_max, dt, t_end, alpha, nu, dealias, sample_every, "
                    "seed, ic)");
  }
}

ParsedConfig parse_config_text(const std::string& text) {
  ParsedConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    const auto eq = line.find('=');
    require(eq != std::string::npos, errc::invalid_argument,
            "config: line " + std::to_string(lineno) + " is not key=value");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      const auto b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    apply_config_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

ParsedConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::io_failure, "config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

unsigned long file_crc32(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), errc::io_failure, "crc32: cannot open '" + path + "'");
  unsigned long crc = crc32(0L, Z_NULL, 0);
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    crc = crc32(crc, reinterpret_cast<const Bytef*>(buf), static_cast<uInt>(in.gcount()));
  }
  return crc;
}

void RunManifest::add_file(const std::string& path) { files.emplace_back(path, file_crc32(path)); }

void RunManifest::write(const std::string& path) const {
  nlohmann::json j;
  j["config"] = {{"L_max", config.lmax},
                 {"dt", config.dt},
                 {"t_end", config.t_end},
                 {"alpha", config.alpha},
                 {"nu", config.nu},
                 {"dealias", config.dealias_fraction},
                 {"sample_every", config.sample_every},
                 {"seed", config.seed}};
  j["ic"] = ic_text;
  j["code_version"] = code_version;
  j["started_utc"] = started_utc;
  j["finished_utc"] = finished_utc;
  j["files"] = nlohmann::json::array();
  for (const auto& [p, crc] : files) {
    j["files"].push_back({{"path", p}, {"crc32", crc}});
  }
  std::ofstream out(path);
  require(out.good(), errc::io_failure, "manifest: cannot open '" + path + "'");
  out << j.dump(2) << "\n";
  out.flush();
  require(out.good(), errc::io_failure, "manifest: write failed");
}

}  // namespace sqg
