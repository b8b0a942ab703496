#pragma once

#include <span>

#include "sqg/field.hpp"
#include "sqg/geometry.hpp"
#include "sqg/transform.hpp"

namespace sqg {

// Spectral multiplier (l(l+1))^{s/2}; negative powers require mean-zero input.
SpectralField lambda_power(const SpectralField& a, double s);

// Heat kernel G(x,y,t) = sum_l (2l+1)/(4pi) e^{-l(l+1)t} P_l(x.y).
// The series is extended until the tail bound (2L+1)e^{-L(L+1)t} < 1e-15.
double heat_kernel(const UnitVector& x, const UnitVector& y, double t, int lmax_hint = 32);

// Subordination quadrature for Lambda^alpha f(x) =
//   C int_0^inf t^{-1-alpha/2} (f(x) - e^{t Lap} f(x)) dt.
// Log-spaced composite Gauss panels on [t_min, t_max] plus closed-form
// endpoint corrections; calibration_constant fixes C on the Y_10 eigenvalue.
struct SemigroupQuadrature {
  double alpha = 1.0;
  double t_min = 1e-5;
  double t_max = 50.0;
  int n_log_nodes = 480;
  double calibration_constant = 0.0;

  static SemigroupQuadrature make(double alpha, double t_min = 1e-5, double t_max = 50.0,
                                  int n_log_nodes = 480);

  // Uncalibrated action of the subordination integral on eigenvalue lambda.
  double raw_multiplier(double lambda) const;
};

double lambda_semigroup(const SpectralField& a, const UnitVector& x, double alpha,
                        const SemigroupQuadrature& q);

// Flat-space fractional-Laplacian normalization for n = 2.
double c_alpha_seed(double alpha);

// Zeroth-order local coefficient Gamma(1+alpha/2)/Gamma(1-alpha/2) pairing
// with the chordal kernel (the closed-form part of the parametrix).
double singular_local_coeff(double alpha);

// Principal-value kernel for the singular-integral representation.
// Kernel u0 chi / d^{2+alpha} with u0 = (d / 2 sin(d/2))^{2+alpha}, i.e. the
// chordal-distance kernel; chi is a quintic smoothstep cutoff, identically 1
// below cutoff_radius/2 (the default cutoff keeps chi = 1 on the whole
// sphere, which minimizes the dropped-k_N residual).
struct SingularKernel {
  double alpha = 1.0;
  double cutoff_radius = 0.0;
  double pv_epsilon = 0.0;
  double c_alpha = 0.0;     // kernel constant, seeded by c_alpha_seed
  double local_coeff = 0.0; // coefficient of the pointwise term
  std::shared_ptr<const Grid> quad_grid;

  static SingularKernel make(double alpha, int quad_lmax);
  static SingularKernel make(double alpha, int quad_lmax, double pv_epsilon,
                             double cutoff_radius);

  double chi(double d) const;
};

double lambda_singular(const SpectralField& a, const UnitVector& x, const SingularKernel& k);
// Shared-synthesis batch variant for evaluating many points.
std::vector<double> lambda_singular_batch(const SpectralField& a,
                                          std::span<const UnitVector> points,
                                          const SingularKernel& k);

// Kernel constant refit against the spectral eigenvalue on Y_10; reported
// alongside the seed, not substituted for it.
double c_alpha_calibrated(const SingularKernel& k);

// D(x): principal-value Dirichlet-type functional of the rotation-gradient
// differences, nonnegative by construction.
double dirichlet_D(const SpectralField& a, const UnitVector& x, const SingularKernel& k);

// Multiplier function with vanishing gradient at the probe point.
struct CommutatorProbe {
  SpectralField a;
  UnitVector x0;

  // Enforces |grad a(x0)| <= 1e-8 ||a||_inf.
  void validate() const;
};

// (Lambda^alpha(a f) - a Lambda^alpha f)(x0), de-aliased product.
double commutator_apply(const CommutatorProbe& p, const SpectralField& f, double alpha);

}  // namespace sqg
