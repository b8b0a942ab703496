#include "sqg/transform.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace sqg {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

enum class SynthKind { value, dtheta, dphi_over_sin };

// Common synthesis core: builds per-row longitude spectra from the Legendre
// sums and inverse-FFTs each latitude row.
PhysicalField synthesize_kind(const SpectralField& a, const std::shared_ptr<const Grid>& grid,
                              SynthKind kind) {
  const Grid& g = *grid;
  int L = std::min(a.lmax(), g.lmax());
  int n_lat = g.n_lat(), n_lon = g.n_lon();

  std::vector<std::complex<double>> spectra(static_cast<size_t>(n_lat) * n_lon);
  auto slot = [&](int i, int m) -> std::complex<double>& {
    int k = m >= 0 ? m : n_lon + m;
    return spectra[static_cast<size_t>(i) * n_lon + k];
  };

  for (int m = 0; m <= L; ++m) {
    double neg_sign = (m % 2) ? -1.0 : 1.0;
    for (int l = m; l <= L; ++l) {
      std::complex<double> cp = a.at(l, m);
      std::complex<double> cn = m > 0 ? neg_sign * a.at(l, -m) : 0.0;
      if (cp == 0.0 && cn == 0.0) continue;
      const double* q = (kind == SynthKind::dtheta) ? g.legendre_deriv_row(l, m)
                                                    : g.legendre_row(l, m);
      for (int i = 0; i < n_lat; ++i) {
        slot(i, m) += cp * q[i];
        if (m > 0) slot(i, -m) += cn * q[i];
      }
    }
  }
  if (kind == SynthKind::dphi_over_sin) {
    const auto& sin_t = g.sin_colat();
    for (int i = 0; i < n_lat; ++i)
      for (int m = -L; m <= L; ++m)
        if (m != 0) slot(i, m) *= kI * static_cast<double>(m) / sin_t[i];
        else slot(i, 0) = 0.0;
  }

  PhysicalField out(grid);
  for (int i = 0; i < n_lat; ++i) {
    std::complex<double>* row = &spectra[static_cast<size_t>(i) * n_lon];
    g.fft_row(row, +1);
    for (int j = 0; j < n_lon; ++j) out.at(i, j) = row[j].real();
  }
  return out;
}

}  // namespace

SpectralField analyze(const PhysicalField& f) {
  const Grid& g = f.grid();
  int L = g.lmax();
  int n_lat = g.n_lat(), n_lon = g.n_lon();
  double dphi = 2.0 * std::numbers::pi / n_lon;

  // longitude FFT of every row
  std::vector<std::complex<double>> fm(static_cast<size_t>(n_lat) * n_lon);
  for (int i = 0; i < n_lat; ++i) {
    std::complex<double>* row = &fm[static_cast<size_t>(i) * n_lon];
    for (int j = 0; j < n_lon; ++j) row[j] = f.at(i, j);
    g.fft_row(row, -1);
  }

  const auto& w = g.quad_weights();
  SpectralField a(L);
  std::vector<std::complex<double>> col_pos(n_lat), col_neg(n_lat);
  for (int m = 0; m <= L; ++m) {
    double neg_sign = (m % 2) ? -1.0 : 1.0;
    for (int i = 0; i < n_lat; ++i) {
      const std::complex<double>* row = &fm[static_cast<size_t>(i) * n_lon];
      col_pos[i] = w[i] * dphi * row[m];
      if (m > 0) col_neg[i] = w[i] * dphi * row[n_lon - m];
    }
    for (int l = m; l <= L; ++l) {
      const double* q = g.legendre_row(l, m);
      std::complex<double> sp = 0.0, sn = 0.0;
      for (int i = 0; i < n_lat; ++i) {
        sp += q[i] * col_pos[i];
        if (m > 0) sn += q[i] * col_neg[i];
      }
      a.at(l, m) = sp;
      if (m > 0) a.at(l, -m) = neg_sign * sn;
    }
  }
  return a;
}

PhysicalField synthesize(const SpectralField& a, std::shared_ptr<const Grid> grid) {
  return synthesize_kind(a, grid, SynthKind::value);
}

VelocityField surface_gradient(const SpectralField& a, std::shared_ptr<const Grid> grid) {
  PhysicalField d_th = synthesize_kind(a, grid, SynthKind::dtheta);
  PhysicalField d_ph = synthesize_kind(a, grid, SynthKind::dphi_over_sin);
  VelocityField u(grid);
  u.u_colat = d_th.values();
  u.u_lon = d_ph.values();
  return u;
}

VelocityField perp_gradient(const SpectralField& a, std::shared_ptr<const Grid> grid) {
  VelocityField grad = surface_gradient(a, grid);
  VelocityField u(grid);
  // n x grad f in the (e_colat, e_lon) frame
  for (size_t k = 0; k < grad.u_colat.size(); ++k) {
    u.u_colat[k] = -grad.u_lon[k];
    u.u_lon[k] = grad.u_colat[k];
  }
  return u;
}

SpectralField angular_momentum(const SpectralField& a, int axis) {
  require(axis >= 1 && axis <= 3, errc::invalid_argument, "axis must be 1, 2 or 3");
  int L = a.lmax();
  SpectralField b(L);
  if (axis == 3) {
    for (int l = 0; l <= L; ++l)
      for (int m = -l; m <= l; ++m) b.at(l, m) = kI * static_cast<double>(m) * a.at(l, m);
    return b;
  }
  auto c_plus = [](int l, int m) {
    return std::sqrt(static_cast<double>(l) * (l + 1) - static_cast<double>(m) * (m + 1));
  };
  for (int l = 0; l <= L; ++l) {
    for (int m = -l; m <= l; ++m) {
      // raising: J_+ Y_{l,m-1} contributes to m; lowering: J_- Y_{l,m+1}
      std::complex<double> up = (m - 1 >= -l) ? c_plus(l, m - 1) * a.at(l, m - 1) : 0.0;
      std::complex<double> dn = (m + 1 <= l) ? c_plus(l, m) * a.at(l, m + 1) : 0.0;
      if (axis == 1)
        b.at(l, m) = kI * 0.5 * (up + dn);  // R_1 = i (J_+ + J_-)/2
      else
        b.at(l, m) = 0.5 * (up - dn);  // R_2 = (J_+ - J_-)/2
    }
  }
  return b;
}

PhysicalField divergence(const VelocityField& u) {
  const auto grid = u.grid;
  const Grid& g = *grid;
  int n_lat = g.n_lat(), n_lon = g.n_lon();
  const auto& sin_t = g.sin_colat();

  // (1/sin) d/dtheta (sin u_colat)
  PhysicalField scaled(grid);
  for (int i = 0; i < n_lat; ++i)
    for (int j = 0; j < n_lon; ++j) scaled.at(i, j) = sin_t[i] * u.u_colat[static_cast<size_t>(i) * n_lon + j];
  PhysicalField t1 = synthesize_kind(analyze(scaled), grid, SynthKind::dtheta);

  // (1/sin) d/dphi u_lon, exact per-row trigonometric differentiation
  PhysicalField out(grid);
  std::vector<std::complex<double>> row(n_lon);
  for (int i = 0; i < n_lat; ++i) {
    for (int j = 0; j < n_lon; ++j) row[j] = u.u_lon[static_cast<size_t>(i) * n_lon + j];
    g.fft_row(row.data(), -1);
    for (int j = 0; j < n_lon; ++j) {
      int m = j <= n_lon / 2 ? j : j - n_lon;
      if (2 * std::abs(m) == n_lon) m = 0;  // Nyquist derivative dropped
      row[j] *= kI * static_cast<double>(m) / static_cast<double>(n_lon);
    }
    g.fft_row(row.data(), +1);
    for (int j = 0; j < n_lon; ++j)
      out.at(i, j) = (t1.at(i, j) + row[j].real()) / sin_t[i];
  }
  return out;
}

double point_evaluate(const SpectralField& a, const UnitVector& p) {
  int L = a.lmax();
  double x = std::clamp(p.z, -1.0, 1.0);
  double phi = std::atan2(p.y, p.x);
  std::vector<double> col(L + 1);
  std::complex<double> total = 0.0;
  for (int m = 0; m <= L; ++m) {
    legendre_column(L, m, x, col.data());
    std::complex<double> sp = 0.0, sn = 0.0;
    for (int l = m; l <= L; ++l) {
      sp += a.at(l, m) * col[l - m];
      if (m > 0) sn += a.at(l, -m) * col[l - m];
    }
    if (m == 0) {
      total += sp;
    } else {
      double neg_sign = (m % 2) ? -1.0 : 1.0;
      std::complex<double> e = std::polar(1.0, m * phi);
      total += sp * e + neg_sign * sn * std::conj(e);
    }
  }
  return total.real();
}

std::array<double, 3> point_rotation_gradient(const SpectralField& a, const UnitVector& p) {
  return {point_evaluate(angular_momentum(a, 1), p),
          point_evaluate(angular_momentum(a, 2), p),
          point_evaluate(angular_momentum(a, 3), p)};
}

SpectralField multiply(const SpectralField& a, const SpectralField& b) {
  int L = std::max(2, a.degree(1e-300) + b.degree(1e-300));
  auto grid = Grid::make(L);
  PhysicalField fa = synthesize(a, grid);
  PhysicalField fb = synthesize(b, grid);
  PhysicalField prod(grid);
  for (size_t k = 0; k < prod.values().size(); ++k)
    prod.values()[k] = fa.values()[k] * fb.values()[k];
  return analyze(prod);
}

void truncate_above(SpectralField& a, int cutoff) {
  for (int l = cutoff + 1; l <= a.lmax(); ++l)
    for (int m = -l; m <= l; ++m) a.at(l, m) = 0.0;
}

}  // namespace sqg
