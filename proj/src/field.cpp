#include "sqg/field.hpp"

#include <cmath>
#include <numbers>

namespace sqg {

int SpectralField::degree(double tol) const {
  for (int l = lmax_; l >= 0; --l)
    for (int m = -l; m <= l; ++m)
      if (std::abs(at(l, m)) > tol) return l;
  return 0;
}

double SpectralField::l2_norm() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::norm(c);
  return std::sqrt(s);
}

double SpectralField::sobolev_norm(double s) const {
  double acc = 0.0;
  for (int l = 1; l <= lmax_; ++l) {
    double w = std::pow(static_cast<double>(l) * (l + 1), s);
    for (int m = -l; m <= l; ++m) acc += w * std::norm(at(l, m));
  }
  return std::sqrt(acc);
}

void SpectralField::enforce_reality() {
  for (int l = 0; l <= lmax_; ++l)
    for (int m = 1; m <= l; ++m) {
      double sign = (m % 2) ? -1.0 : 1.0;
      auto sym = 0.5 * (at(l, m) + sign * std::conj(at(l, -m)));
      at(l, m) = sym;
      at(l, -m) = sign * std::conj(sym);
    }
}

double SpectralField::reality_defect() const {
  double d = 0.0;
  for (int l = 0; l <= lmax_; ++l) {
    for (int m = 0; m <= l; ++m) {
      double sign = (m % 2) ? -1.0 : 1.0;
      d = std::fmax(d, std::abs(at(l, -m) - sign * std::conj(at(l, m))));
    }
  }
  return d;
}

SpectralField SpectralField::truncated(int new_lmax) const {
  SpectralField out(new_lmax);
  int l_copy = std::min(lmax_, new_lmax);
  for (int l = 0; l <= l_copy; ++l)
    for (int m = -l; m <= l; ++m) out.at(l, m) = at(l, m);
  return out;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require(o.lmax_ == lmax_, errc::invalid_argument, "truncation mismatch");
  for (size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require(o.lmax_ == lmax_, errc::invalid_argument, "truncation mismatch");
  for (size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  return *this;
}

SpectralField& SpectralField::operator*=(double c) {
  for (auto& v : coeffs_) v *= c;
  return *this;
}

SpectralField SpectralField::real_harmonic(int lmax, int l, int m) {
  require(l <= lmax && m >= 0 && m <= l, errc::invalid_argument, "harmonic out of range");
  SpectralField a(lmax);
  if (m == 0) {
    a.at(l, 0) = 1.0;
  } else {
    double sign = (m % 2) ? -1.0 : 1.0;
    a.at(l, m) = 0.5;
    a.at(l, -m) = 0.5 * sign;
  }
  return a;
}

double PhysicalField::max_abs() const {
  double v = 0.0;
  for (double x : values_) v = std::fmax(v, std::abs(x));
  return v;
}

double PhysicalField::l2_norm() const {
  const auto& w = grid_->quad_weights();
  double dphi = 2.0 * std::numbers::pi / grid_->n_lon();
  double s = 0.0;
  for (int i = 0; i < grid_->n_lat(); ++i) {
    double row = 0.0;
    for (int j = 0; j < grid_->n_lon(); ++j) row += at(i, j) * at(i, j);
    s += w[i] * row;
  }
  return std::sqrt(s * dphi);
}

double VelocityField::max_speed() const {
  double v = 0.0;
  for (size_t k = 0; k < u_colat.size(); ++k)
    v = std::fmax(v, u_colat[k] * u_colat[k] + u_lon[k] * u_lon[k]);
  return std::sqrt(v);
}

double VelocityField::l2_norm() const {
  const auto& w = grid->quad_weights();
  double dphi = 2.0 * std::numbers::pi / grid->n_lon();
  double s = 0.0;
  for (int i = 0; i < grid->n_lat(); ++i) {
    double row = 0.0;
    for (int j = 0; j < grid->n_lon(); ++j) {
      size_t k = static_cast<size_t>(i) * grid->n_lon() + j;
      row += u_colat[k] * u_colat[k] + u_lon[k] * u_lon[k];
    }
    s += w[i] * row;
  }
  return std::sqrt(s * dphi);
}

}  // namespace sqg
