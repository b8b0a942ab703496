#include "sqg/fractional.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sqg/grid.hpp"

namespace sqg {

namespace {
constexpr double kPi = std::numbers::pi;

double eig(int l) { return static_cast<double>(l) * (l + 1); }
}  // namespace

SpectralField lambda_power(const SpectralField& a, double s) {
  require(s >= -2.0 && s <= 2.0, errc::invalid_argument,
          "lambda_power: exponent s must lie in [-2, 2]");
  if (s < 0.0) {
    require(std::abs(a.mean_coeff()) <= 1e-12 * (1.0 + a.l2_norm()), errc::precondition,
            "lambda_power: negative powers require a mean-zero field");
  }
  SpectralField out(a.lmax());
  for (int l = 1; l <= a.lmax(); ++l) {
    const double mult = std::pow(eig(l), 0.5 * s);
    for (int m = -l; m <= l; ++m) out.at(l, m) = mult * a.at(l, m);
  }
  if (s == 0.0) out.at(0, 0) = a.at(0, 0);
  return out;
}

double heat_kernel(const UnitVector& x, const UnitVector& y, double t, int lmax_hint) {
  require(t > 0.0, errc::invalid_argument, "heat_kernel: t must be positive");
  int lmax = std::max(lmax_hint, 4);
  while ((2.0 * lmax + 1.0) * std::exp(-eig(lmax) * t) >= 1e-15) {
    lmax *= 2;
    require(lmax <= (1 << 22), errc::internal, "heat_kernel: series did not converge");
  }
  const double c = std::clamp(x.dot(y), -1.0, 1.0);
  // Legendre three-term recurrence; the series is absolutely convergent since
  // |P_l| <= 1.
  double pm2 = 1.0, pm1 = c, sum = 1.0 / (4.0 * kPi) + 3.0 / (4.0 * kPi) * std::exp(-2.0 * t) * c;
  for (int l = 2; l <= lmax; ++l) {
    const double pl = ((2.0 * l - 1.0) * c * pm1 - (l - 1.0) * pm2) / l;
    sum += (2.0 * l + 1.0) / (4.0 * kPi) * std::exp(-eig(l) * t) * pl;
    pm2 = pm1;
    pm1 = pl;
  }
  return sum;
}

SemigroupQuadrature SemigroupQuadrature::make(double alpha, double t_min, double t_max,
                                              int n_log_nodes) {
  require(alpha > 0.0 && alpha < 2.0, errc::invalid_argument,
          "semigroup quadrature: alpha must lie in (0, 2)");
  require(t_min > 0.0 && t_max > t_min, errc::invalid_argument,
          "semigroup quadrature: need 0 < t_min < t_max");
  require(n_log_nodes >= 16, errc::invalid_argument,
          "semigroup quadrature: need at least 16 nodes");
  SemigroupQuadrature q;
  q.alpha = alpha;
  q.t_min = t_min;
  q.t_max = t_max;
  q.n_log_nodes = n_log_nodes;
  q.calibration_constant = 1.0;
  // Fix the constant on the l = 1 eigenvalue: Lambda^alpha Y_10 = 2^{alpha/2} Y_10.
  q.calibration_constant = std::pow(2.0, 0.5 * alpha) / q.raw_multiplier(2.0);
  return q;
}

double SemigroupQuadrature::raw_multiplier(double lambda) const {
  const double s = 0.5 * alpha;
  // Composite 8-point Gauss-Legendre in u = log t on [log t_min, log t_max].
  static thread_local std::vector<double> gx, gw;
  if (gx.empty()) gauss_legendre(8, gx, gw);
  const int panels = std::max(2, n_log_nodes / 8);
  const double u_lo = std::log(t_min), u_hi = std::log(t_max);
  const double du = (u_hi - u_lo) / panels;
  double integral = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double uc = u_lo + (p + 0.5) * du;
    for (size_t k = 0; k < gx.size(); ++k) {
      const double u = uc + 0.5 * du * gx[k];
      const double t = std::exp(u);
      // dt = t du; integrand t^{-1-s} (1 - e^{-lambda t}).
      integral += 0.5 * du * gw[k] * std::pow(t, -s) * (-std::expm1(-lambda * t));
    }
  }
  // Small-t correction from the two-term Taylor expansion of 1 - e^{-lambda t}.
  integral += lambda * std::pow(t_min, 1.0 - s) / (1.0 - s) -
              lambda * lambda * std::pow(t_min, 2.0 - s) / (2.0 * (2.0 - s));
  // Large-t tail where 1 - e^{-lambda t} is 1 to machine precision.
  integral += std::pow(t_max, -s) / s;
  return integral;
}

double lambda_semigroup(const SpectralField& a, const UnitVector& x, double alpha,
                        const SemigroupQuadrature& q) {
  require(std::abs(alpha - q.alpha) <= 1e-14, errc::invalid_argument,
          "lambda_semigroup: quadrature was built for a different alpha");
  // Per-degree profile b_l = sum_m a_lm Y_lm(x); the subordination integral
  // then acts degree by degree.
  const int lmax = a.lmax();
  std::vector<double> profile(lmax + 1, 0.0);
  std::vector<double> col(lmax + 1);
  const double ct = std::clamp(x.z, -1.0, 1.0);
  const double lon = x.longitude();
  for (int m = 0; m <= lmax; ++m) {
    legendre_column(lmax, m, ct, col.data());
    const std::complex<double> em(std::cos(m * lon), std::sin(m * lon));
    for (int l = std::max(1, m); l <= lmax; ++l) {
      std::complex<double> term = a.at(l, m) * em * col[l - m];
      if (m > 0) {
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        term += a.at(l, -m) * sign * std::conj(em) * col[l - m];
      }
      profile[l] += term.real();
    }
  }
  double out = 0.0;
  for (int l = 1; l <= lmax; ++l) {
    if (profile[l] != 0.0) out += profile[l] * q.raw_multiplier(eig(l));
  }
  return q.calibration_constant * out;
}

double c_alpha_seed(double alpha) {
  const double s = 0.5 * alpha;
  return s * std::pow(4.0, s) * std::tgamma(1.0 + s) / (kPi * std::tgamma(1.0 - s));
}

double singular_local_coeff(double alpha) {
  const double s = 0.5 * alpha;
  return std::tgamma(1.0 + s) / std::tgamma(1.0 - s);
}

SingularKernel SingularKernel::make(double alpha, int quad_lmax) {
  return make(alpha, quad_lmax, 2.5 / std::sqrt(static_cast<double>(quad_lmax)), 2.0 * kPi);
}

SingularKernel SingularKernel::make(double alpha, int quad_lmax, double pv_epsilon,
                                    double cutoff_radius) {
  require(alpha > 0.0 && alpha < 2.0, errc::invalid_argument,
          "singular kernel: alpha must lie in (0, 2)");
  require(quad_lmax >= 8, errc::invalid_argument, "singular kernel: quadrature lmax too small");
  require(pv_epsilon > 0.0 && pv_epsilon < 1.0, errc::invalid_argument,
          "singular kernel: pv_epsilon must lie in (0, 1)");
  require(cutoff_radius > 0.0, errc::invalid_argument,
          "singular kernel: cutoff_radius must be positive");
  SingularKernel k;
  k.alpha = alpha;
  k.cutoff_radius = cutoff_radius;
  k.pv_epsilon = pv_epsilon;
  k.c_alpha = c_alpha_seed(alpha);
  k.local_coeff = singular_local_coeff(alpha);
  k.quad_grid = Grid::make(quad_lmax);
  return k;
}

double SingularKernel::chi(double d) const {
  if (d <= 0.5 * cutoff_radius) return 1.0;
  if (d >= cutoff_radius) return 0.0;
  // Quintic smoothstep taper on [R/2, R].
  const double u = (cutoff_radius - d) / (0.5 * cutoff_radius);
  return u * u * u * (10.0 - 15.0 * u + 6.0 * u * u);
}

namespace {

// Laplace-Beltrami of a at x, evaluated spectrally (multiplier -l(l+1)).
double laplacian_at(const SpectralField& a, const UnitVector& x) {
  SpectralField lap(a.lmax());
  for (int l = 1; l <= a.lmax(); ++l)
    for (int m = -l; m <= l; ++m) lap.at(l, m) = -eig(l) * a.at(l, m);
  return point_evaluate(lap, x);
}

}  // namespace

std::vector<double> lambda_singular_batch(const SpectralField& a,
                                          std::span<const UnitVector> points,
                                          const SingularKernel& k) {
  require(k.quad_grid != nullptr, errc::precondition, "singular kernel: not initialized");
  const int deg = a.degree(1e-13);
  require(k.pv_epsilon * std::max(deg, 1) <= 2.0, errc::precondition,
          "lambda_singular: pv_epsilon too large for the field degree; refine the "
          "quadrature grid");
  const Grid& g = *k.quad_grid;
  const PhysicalField f = synthesize(a, k.quad_grid);
  const double mean = a.mean_coeff().real() / std::sqrt(4.0 * kPi);

  std::vector<double> out(points.size());
  std::vector<double> lon_cos(g.n_lon()), lon_sin(g.n_lon());
  for (int j = 0; j < g.n_lon(); ++j) {
    lon_cos[j] = std::cos(g.longitude(j));
    lon_sin[j] = std::sin(g.longitude(j));
  }
  const double dphi = 2.0 * kPi / g.n_lon();
  for (size_t p = 0; p < points.size(); ++p) {
    const UnitVector& x = points[p];
    const double fx = point_evaluate(a, x);
    double integral = 0.0;
    for (int i = 0; i < g.n_lat(); ++i) {
      const double st = g.sin_colat()[i], ctn = g.cos_colat()[i];
      const double w = g.quad_weights()[i] * dphi;
      for (int j = 0; j < g.n_lon(); ++j) {
        const double dot = std::clamp(
            x.x * st * lon_cos[j] + x.y * st * lon_sin[j] + x.z * ctn, -1.0, 1.0);
        const double d = std::acos(dot);
        if (d < k.pv_epsilon || d >= k.cutoff_radius) continue;
        const double chord = 2.0 * std::sin(0.5 * d);
        integral += (fx - f.at(i, j)) * k.chi(d) / std::pow(chord, 2.0 + k.alpha) * w;
      }
    }
    // Compensate the excluded geodesic ball to second order in epsilon.
    integral -= 0.5 * kPi * laplacian_at(a, x) * std::pow(k.pv_epsilon, 2.0 - k.alpha) /
                (2.0 - k.alpha);
    out[p] = k.c_alpha * integral + k.local_coeff * (fx - mean);
  }
  return out;
}

double lambda_singular(const SpectralField& a, const UnitVector& x, const SingularKernel& k) {
  const UnitVector pts[1] = {x};
  return lambda_singular_batch(a, std::span<const UnitVector>(pts, 1), k)[0];
}

double c_alpha_calibrated(const SingularKernel& k) {
  // Refit the kernel constant so the representation reproduces the spectral
  // action on Y_10 at a spread of sample points.
  SpectralField y10 = SpectralField::real_harmonic(4, 1, 0);
  const double exact_mult = std::pow(2.0, 0.5 * k.alpha);
  std::vector<UnitVector> pts;
  for (int i = 0; i < 12; ++i) {
    const double colat = kPi * (i + 0.5) / 12.0;
    pts.push_back(UnitVector::from_angles(colat, 0.7 * i));
  }
  SingularKernel unit = k;
  unit.c_alpha = 1.0;
  unit.local_coeff = 0.0;
  const std::vector<double> raw = lambda_singular_batch(y10, pts, unit);
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    const double fx = point_evaluate(y10, pts[i]);
    const double target = exact_mult * fx - k.local_coeff * fx;
    num += target * raw[i];
    den += raw[i] * raw[i];
  }
  require(den > 0.0, errc::internal, "c_alpha calibration: degenerate sample");
  return num / den;
}

double dirichlet_D(const SpectralField& a, const UnitVector& x, const SingularKernel& k) {
  require(k.quad_grid != nullptr, errc::precondition, "singular kernel: not initialized");
  const Grid& g = *k.quad_grid;
  // Realize the gradient as the three rotation-generator fields; the sum of
  // squared differences is then frame-independent.
  PhysicalField r[3] = {synthesize(angular_momentum(a, 1), k.quad_grid),
                        synthesize(angular_momentum(a, 2), k.quad_grid),
                        synthesize(angular_momentum(a, 3), k.quad_grid)};
  const std::array<double, 3> gx = point_rotation_gradient(a, x);
  const double dphi = 2.0 * kPi / g.n_lon();
  double integral = 0.0;
  for (int i = 0; i < g.n_lat(); ++i) {
    const double st = g.sin_colat()[i], ctn = g.cos_colat()[i];
    const double w = g.quad_weights()[i] * dphi;
    for (int j = 0; j < g.n_lon(); ++j) {
      const double lon = g.longitude(j);
      const double dot = std::clamp(
          x.x * st * std::cos(lon) + x.y * st * std::sin(lon) + x.z * ctn, -1.0, 1.0);
      const double d = std::acos(dot);
      if (d < k.pv_epsilon || d >= k.cutoff_radius) continue;
      const double d0 = gx[0] - r[0].at(i, j);
      const double d1 = gx[1] - r[1].at(i, j);
      const double d2 = gx[2] - r[2].at(i, j);
      const double chord = 2.0 * std::sin(0.5 * d);
      integral += (d0 * d0 + d1 * d1 + d2 * d2) * k.chi(d) /
                  std::pow(chord, 2.0 + k.alpha) * w;
    }
  }
  return k.c_alpha * integral;
}

void CommutatorProbe::validate() const {
  const std::array<double, 3> g = point_rotation_gradient(a, x0);
  const double gnorm = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
  auto grid = Grid::make(std::max(2 * a.lmax(), 8));
  const double sup = synthesize(a, grid).max_abs();
  require(gnorm <= 1e-8 * sup, errc::precondition,
          "commutator probe: gradient of the multiplier does not vanish at x0");
}

double commutator_apply(const CommutatorProbe& p, const SpectralField& f, double alpha) {
  require(alpha > 0.0 && alpha <= 2.0, errc::invalid_argument,
          "commutator_apply: alpha must lie in (0, 2]");
  p.validate();
  const SpectralField af = multiply(p.a, f);
  const double term1 = point_evaluate(lambda_power(af, alpha), p.x0);
  const double term2 =
      point_evaluate(p.a, p.x0) * point_evaluate(lambda_power(f, alpha), p.x0);
  return term1 - term2;
}

}  // namespace sqg
