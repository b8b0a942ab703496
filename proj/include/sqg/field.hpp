#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "sqg/grid.hpp"

namespace sqg {

// Spherical-harmonic coefficients a_{lm} of a scalar field, orthonormal
// convention with Condon-Shortley phase.  Index (l, m) -> l^2 + l + m,
// l in [0, lmax], m in [-l, l].  A real field satisfies
// a_{l,-m} = (-1)^m conj(a_{lm}).
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(int lmax) : lmax_(lmax), coeffs_((lmax + 1) * (lmax + 1)) {}

  int lmax() const { return lmax_; }
  std::complex<double>& at(int l, int m) { return coeffs_[l * l + l + m]; }
  const std::complex<double>& at(int l, int m) const { return coeffs_[l * l + l + m]; }
  std::vector<std::complex<double>>& coeffs() { return coeffs_; }
  const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }

  // Highest degree carrying energy above `tol`.
  int degree(double tol = 0.0) const;

  double l2_norm() const;               // sqrt(sum |a_lm|^2) = ||f||_{L^2}
  double sobolev_norm(double s) const;  // (sum (l(l+1))^s |a_lm|^2)^{1/2}
  std::complex<double> mean_coeff() const { return coeffs_[0]; }

  void set_mean_zero() { coeffs_[0] = 0.0; }
  void enforce_reality();
  double reality_defect() const;  // max |a_{l,-m} - (-1)^m conj(a_{lm})|

  // Re-indexes to a new truncation; drops or zero-pads degrees.
  SpectralField truncated(int new_lmax) const;

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double c);

  // f = Y_{l0} for m == 0, f = Re Y_{lm} for m > 0.
  static SpectralField real_harmonic(int lmax, int l, int m);

 private:
  int lmax_ = -1;
  std::vector<std::complex<double>> coeffs_;
};

// Real values on the collocation grid, row-major (latitude, longitude).
class PhysicalField {
 public:
  PhysicalField() = default;
  explicit PhysicalField(std::shared_ptr<const Grid> grid)
      : grid_(std::move(grid)),
        values_(static_cast<size_t>(grid_->n_lat()) * grid_->n_lon()) {}

  const Grid& grid() const { return *grid_; }
  std::shared_ptr<const Grid> grid_ptr() const { return grid_; }
  double& at(int i, int j) { return values_[static_cast<size_t>(i) * grid_->n_lon() + j]; }
  double at(int i, int j) const { return values_[static_cast<size_t>(i) * grid_->n_lon() + j]; }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  double max_abs() const;
  // L^2 norm over the sphere by Gauss-Legendre x trapezoid quadrature.
  double l2_norm() const;

 private:
  std::shared_ptr<const Grid> grid_;
  std::vector<double> values_;
};

// Tangent vector field in the local orthonormal frame (e_colat, e_lon),
// u_lon positive eastward.
struct VelocityField {
  std::shared_ptr<const Grid> grid;
  std::vector<double> u_colat, u_lon;

  explicit VelocityField(std::shared_ptr<const Grid> g)
      : grid(std::move(g)),
        u_colat(static_cast<size_t>(grid->n_lat()) * grid->n_lon()),
        u_lon(u_colat.size()) {}

  double max_speed() const;
  double l2_norm() const;
};

}  // namespace sqg
