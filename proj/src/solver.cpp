#include "sqg/solver.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "sqg/errors.hpp"
#include "sqg/fractional.hpp"
#include "sqg/grid.hpp"

namespace sqg {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kCflLimit = 0.8;

double linear_symbol(int l, double alpha, double nu) {
  const double lam = static_cast<double>(l) * (l + 1);
  return std::pow(lam, 0.5 * alpha) + nu * lam;
}
}  // namespace

void SolverConfig::validate() const {
  require(lmax >= 2 && lmax <= 2048, errc::invalid_argument,
          "config: L_max must lie in [2, 2048]");
  require(dt > 0.0, errc::invalid_argument, "config: dt must be positive");
  require(t_end >= 0.0, errc::invalid_argument, "config: t_end must be nonnegative");
  require(alpha > 0.0 && alpha <= 2.0, errc::invalid_argument,
          "config: alpha must lie in (0, 2]");
  require(nu >= 0.0, errc::invalid_argument, "config: nu must be nonnegative");
  require(dealias_fraction > 0.5 && dealias_fraction <= 1.0, errc::invalid_argument,
          "config: dealias_fraction must lie in (0.5, 1]");
  require(sample_every >= 1, errc::invalid_argument, "config: sample_every must be >= 1");
}

int SolverConfig::dealias_cutoff() const {
  return static_cast<int>(std::floor(dealias_fraction * lmax));
}

InitialCondition InitialCondition::parse(const std::string& text) {
  const auto colon = text.find(':');
  require(colon != std::string::npos, errc::invalid_argument,
          "initial condition: expected kind:params (zonal:L | random:LO,HI,AMP,SEED | "
          "pair:SEP,WIDTH,AMP)");
  const std::string kind = text.substr(0, colon);
  std::vector<double> vals;
  {
    std::stringstream ss(text.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        size_t used = 0;
        vals.push_back(std::stod(tok, &used));
        require(used == tok.size(), errc::invalid_argument,
                "initial condition: bad numeric parameter '" + tok + "'");
      } catch (const std::logic_error&) {
        throw error(errc::invalid_argument,
                    "initial condition: bad numeric parameter '" + tok + "'");
      }
    }
  }
  InitialCondition ic;
  if (kind == "zonal") {
    require(vals.size() == 1, errc::invalid_argument, "initial condition: zonal:L");
    ic.kind = Kind::zonal_harmonic;
    ic.zonal_l = static_cast<int>(vals[0]);
    require(ic.zonal_l >= 1, errc::invalid_argument, "initial condition: zonal degree >= 1");
  } else if (kind == "random") {
    require(vals.size() == 4, errc::invalid_argument,
            "initial condition: random:LO,HI,AMP,SEED");
    ic.kind = Kind::random_band;
    ic.band_lo = static_cast<int>(vals[0]);
    ic.band_hi = static_cast<int>(vals[1]);
    ic.amplitude = vals[2];
    ic.seed = static_cast<unsigned long long>(vals[3]);
    require(ic.band_lo >= 1 && ic.band_hi >= ic.band_lo, errc::invalid_argument,
            "initial condition: need 1 <= LO <= HI");
  } else if (kind == "pair") {
    require(vals.size() == 3, errc::invalid_argument, "initial condition: pair:SEP,WIDTH,AMP");
    ic.kind = Kind::gaussian_pair;
    ic.separation = vals[0];
    ic.width = vals[1];
    ic.amplitude = vals[2];
    require(ic.separation > 0.0 && ic.separation < kPi, errc::invalid_argument,
            "initial condition: separation in (0, pi)");
    require(ic.width > 0.0, errc::invalid_argument, "initial condition: width > 0");
  } else {
    throw error(errc::invalid_argument,
                "initial condition: unknown kind '" + kind + "' (zonal | random | pair)");
  }
  return ic;
}

std::string InitialCondition::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::zonal_harmonic:
      os << "zonal:" << zonal_l;
      break;
    case Kind::random_band:
      os << "random:" << band_lo << "," << band_hi << "," << amplitude << "," << seed;
      break;
    case Kind::gaussian_pair:
      os << "pair:" << separation << "," << width << "," << amplitude;
      break;
  }
  return os.str();
}

SpectralField InitialCondition::build(int lmax) const {
  SpectralField out(lmax);
  switch (kind) {
    case Kind::zonal_harmonic: {
      require(zonal_l <= lmax, errc::invalid_argument,
              "initial condition: zonal degree exceeds L_max");
      out = SpectralField::real_harmonic(lmax, zonal_l, 0);
      out *= amplitude;
      break;
    }
    case Kind::random_band: {
      require(band_hi <= lmax, errc::invalid_argument,
              "initial condition: band exceeds L_max");
      std::mt19937_64 rng(seed);
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (int l = band_lo; l <= band_hi; ++l) {
        out.at(l, 0) = gauss(rng);
        for (int m = 1; m <= l; ++m) {
          const std::complex<double> c(gauss(rng), gauss(rng));
          out.at(l, m) = c;
          out.at(l, -m) = ((m % 2 == 0) ? 1.0 : -1.0) * std::conj(c);
        }
      }
      const double n = out.l2_norm();
      if (n > 0.0) out *= amplitude / n;
      break;
    }
    case Kind::gaussian_pair: {
      // Two opposite-sign Gaussian bumps at geodesic separation `separation`,
      // symmetric about the north pole along the x-z great circle; projected
      // onto the truncation by quadrature and re-centered to mean zero.
      auto grid = Grid::make(lmax);
      PhysicalField f(grid);
      const double half = 0.5 * separation;
      const UnitVector p1 = UnitVector::from_angles(half, 0.0);
      const UnitVector p2 = UnitVector::from_angles(half, kPi);
      for (int i = 0; i < grid->n_lat(); ++i) {
        for (int j = 0; j < grid->n_lon(); ++j) {
          const UnitVector y =
              UnitVector::from_angles(grid->colatitudes()[i], grid->longitude(j));
          const double d1 = geodesic_distance(y, p1), d2 = geodesic_distance(y, p2);
          f.at(i, j) = amplitude * (std::exp(-0.5 * d1 * d1 / (width * width)) -
                                    std::exp(-0.5 * d2 * d2 / (width * width)));
        }
      }
      out = analyze(f);
      break;
    }
  }
  out.set_mean_zero();
  out.enforce_reality();
  return out;
}

VelocityField compute_velocity(const SpectralField& theta, std::shared_ptr<const Grid> grid) {
  require(std::abs(theta.mean_coeff()) <= 1e-12 * (1.0 + theta.l2_norm()), errc::precondition,
          "compute_velocity: theta must be mean-zero");
  return perp_gradient(lambda_power(theta, -1.0), std::move(grid));
}

SpectralField nonlinear_term(const SpectralField& theta, std::shared_ptr<const Grid> grid,
                             double dealias_fraction) {
  const int cutoff = static_cast<int>(std::floor(dealias_fraction * theta.lmax()));
  SpectralField t = theta;
  truncate_above(t, cutoff);
  const VelocityField u = compute_velocity(t, grid);
  const VelocityField g = surface_gradient(t, grid);
  PhysicalField adv(grid);
  for (size_t i = 0; i < adv.values().size(); ++i) {
    adv.values()[i] = u.u_colat[i] * g.u_colat[i] + u.u_lon[i] * g.u_lon[i];
  }
  SpectralField out = analyze(adv);
  truncate_above(out, cutoff);
  out.set_mean_zero();
  out.enforce_reality();
  return out;
}

void step(SimulationState& s, const SolverConfig& c, std::shared_ptr<const Grid> grid) {
  const int lmax = s.theta.lmax();
  require(lmax == c.lmax, errc::precondition, "step: state truncation differs from config");

  const SpectralField k1 = nonlinear_term(s.theta, grid, c.dealias_fraction);
  {
    SpectralField t = s.theta;
    truncate_above(t, c.dealias_cutoff());
    const double umax = compute_velocity(t, grid).max_speed();
    require(c.dt * umax * lmax <= kCflLimit, errc::cfl_violation,
            "step: CFL guard dt*max|u|*L_max <= 0.8 violated");
  }

  std::vector<double> decay(lmax + 1);
  for (int l = 0; l <= lmax; ++l) decay[l] = std::exp(-linear_symbol(l, c.alpha, c.nu) * c.dt);

  // Heun under the integrating factor: the linear symbol is integrated
  // exactly, the advection explicitly in two stages.
  SpectralField predictor = s.theta;
  SpectralField half = s.theta;
  for (int l = 0; l <= lmax; ++l) {
    for (int m = -l; m <= l; ++m) {
      predictor.at(l, m) = decay[l] * (s.theta.at(l, m) - c.dt * k1.at(l, m));
      half.at(l, m) = decay[l] * (s.theta.at(l, m) - 0.5 * c.dt * k1.at(l, m));
    }
  }
  const SpectralField k2 = nonlinear_term(predictor, grid, c.dealias_fraction);
  for (int l = 0; l <= lmax; ++l) {
    for (int m = -l; m <= l; ++m) {
      s.theta.at(l, m) = half.at(l, m) - 0.5 * c.dt * k2.at(l, m);
    }
  }
  s.theta.set_mean_zero();
  s.theta.enforce_reality();
  s.time += c.dt;
  s.step_index += 1;
}

SimulationState run(const InitialCondition& ic, const SolverConfig& c, const RunSinks& sinks) {
  c.validate();
  auto grid = Grid::make(c.lmax);
  SimulationState s;
  s.theta = ic.build(c.lmax);
  if (sinks.on_sample) sinks.on_sample(s);
  const auto n_steps = static_cast<unsigned long long>(std::llround(c.t_end / c.dt));
  for (unsigned long long n = 0; n < n_steps; ++n) {
    try {
      step(s, c, grid);
    } catch (const error&) {
      if (sinks.on_abort) sinks.on_abort(s);
      throw;
    }
    if (sinks.on_sample && (s.step_index % c.sample_every == 0 || n + 1 == n_steps)) {
      sinks.on_sample(s);
    }
  }
  return s;
}

}  // namespace sqg
