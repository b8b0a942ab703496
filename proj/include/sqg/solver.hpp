#pragma once

#include <functional>
#include <string>

#include "sqg/field.hpp"
#include "sqg/transform.hpp"

namespace sqg {

struct SolverConfig {
  int lmax = 64;
  double dt = 1e-3;
  double t_end = 1.0;
  double alpha = 1.0;  // dissipation order, (0, 2]
  double nu = 0.0;     // artificial viscosity
  double dealias_fraction = 2.0 / 3.0;
  int sample_every = 10;
  unsigned long long seed = 1234;

  void validate() const;
  int dealias_cutoff() const;
};

struct SimulationState {
  double time = 0.0;
  unsigned long long step_index = 0;
  SpectralField theta;
};

struct InitialCondition {
  enum class Kind { zonal_harmonic, random_band, gaussian_pair };
  Kind kind = Kind::zonal_harmonic;
  int zonal_l = 2;
  int band_lo = 4, band_hi = 12;
  double amplitude = 1.0;
  unsigned long long seed = 1234;
  double separation = 1.5, width = 0.4;

  // Accepted forms: "zonal:L", "random:LO,HI,AMP,SEED", "pair:SEP,WIDTH,AMP".
  static InitialCondition parse(const std::string& text);
  std::string to_string() const;

  // Real, mean-zero, band-limited field at the requested truncation.
  SpectralField build(int lmax) const;
};

VelocityField compute_velocity(const SpectralField& theta, std::shared_ptr<const Grid> grid);

// u . grad theta as a spectral field, de-aliased before and after the product.
SpectralField nonlinear_term(const SpectralField& theta, std::shared_ptr<const Grid> grid,
                             double dealias_fraction);

// One integrating-factor Heun step; throws errc::cfl_violation when
// dt * max|u| * lmax exceeds 0.8, leaving the state untouched.
void step(SimulationState& s, const SolverConfig& c, std::shared_ptr<const Grid> grid);

struct RunSinks {
  // Invoked at t = 0 and after every sample_every steps (and at t_end).
  std::function<void(const SimulationState&)> on_sample;
  // Invoked with the last consistent state if the run aborts.
  std::function<void(const SimulationState&)> on_abort;
};

SimulationState run(const InitialCondition& ic, const SolverConfig& c, const RunSinks& sinks);

}  // namespace sqg
