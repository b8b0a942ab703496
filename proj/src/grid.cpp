#include "sqg/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>

namespace sqg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool smooth235(int n) {
  for (int p : {2, 3, 5})
    while (n % p == 0) n /= p;
  return n == 1;
}

int pick_n_lon(int lmax) {
  int n = 2 * lmax + 1;
  if (n % 2) ++n;
  while (!smooth235(n)) n += 2;
  return n;
}

// Normalized associated Legendre recurrence at one node, underflow-safe.
// Emits Q_{lm} = P~_{lm} / sqrt(2 pi) for l = m..lmax via the callback.
template <typename Emit>
void legendre_sweep(int lmax, int m, double x, double seed_log_prefix, Emit&& emit) {
  const double sin_t = std::sqrt(std::fmax(0.0, 1.0 - x * x));
  const double inv_norm = 1.0 / std::sqrt(kTwoPi);

  double scale_log = 0.0;  // stored values are exp(scale_log) times the true ones
  double seed_log = seed_log_prefix + (m > 0 ? m * std::log(std::fmax(sin_t, 1e-300)) : 0.0);
  if (seed_log < -650.0) {
    scale_log = -650.0 - seed_log;
    seed_log = -650.0;
  }
  double sign = (m % 2) ? -1.0 : 1.0;
  double p_prev = 0.0;
  double p_curr = sign * std::exp(seed_log);

  auto materialize = [&](double p) -> double {
    if (scale_log == 0.0) return p * inv_norm;
    if (scale_log > 1400.0) return 0.0;
    double half = std::exp(-0.5 * scale_log);
    return p * half * half * inv_norm;
  };

  emit(m, materialize(p_curr));
  if (m == lmax) return;

  double p_next = std::sqrt(2.0 * m + 3.0) * x * p_curr;
  p_prev = p_curr;
  p_curr = p_next;
  emit(m + 1, materialize(p_curr));

  for (int l = m + 2; l <= lmax; ++l) {
    double l2m2 = static_cast<double>(l) * l - static_cast<double>(m) * m;
    double a = std::sqrt((4.0 * l * l - 1.0) / l2m2);
    double b = std::sqrt((2.0 * l + 1.0) * ((l - 1.0) * (l - 1.0) - m * m) /
                         ((2.0 * l - 3.0) * l2m2));
    double next = a * x * p_curr - b * p_prev;
    p_prev = p_curr;
    p_curr = next;
    if (scale_log > 0.0 && std::abs(p_curr) > 1e50) {
      double drop = std::fmin(scale_log, 100.0);
      double f = std::exp(-drop);
      p_curr *= f;
      p_prev *= f;
      scale_log -= drop;
    }
    emit(l, materialize(p_curr));
  }
}

// log of the P~_{mm} magnitude without the sin^m factor:
// P~_{mm} = (-1)^m sqrt((2m+1)!! / (2 (2m)!!)) sin^m(theta)
double seed_log_prefix(int m) {
  double s = 0.5 * std::log(0.5);
  for (int k = 1; k <= m; ++k) s += 0.5 * std::log((2.0 * k + 1.0) / (2.0 * k));
  return s;
}

size_t tri_index(int l, int m) {  // m <= l
  return static_cast<size_t>(l) * (l + 1) / 2 + m;
}

}  // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // root of P_n, descending in x for ascending i
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

void legendre_column(int lmax, int m, double cos_colat, double* out) {
  legendre_sweep(lmax, m, cos_colat, seed_log_prefix(m),
                 [&](int l, double v) { out[l - m] = v; });
}

struct Grid::FftPlans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  ~FftPlans() {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

Grid::Grid(int lmax) : lmax_(lmax) {
  require(lmax >= 2 && lmax <= 2048, errc::invalid_argument,
          "L_max out of supported range [2, 2048]");
  n_lat_ = lmax + 1;
  n_lon_ = pick_n_lon(lmax);

  std::vector<double> x, w;
  gauss_legendre(n_lat_, x, w);
  x_ = x;
  weights_ = w;
  colat_.resize(n_lat_);
  sin_colat_.resize(n_lat_);
  for (int i = 0; i < n_lat_; ++i) {
    colat_[i] = std::acos(x_[i]);
    sin_colat_[i] = std::sqrt(std::fmax(0.0, 1.0 - x_[i] * x_[i]));
  }

  size_t n_tri = static_cast<size_t>(lmax + 1) * (lmax + 2) / 2;
  legendre_.resize(n_tri * n_lat_);
  legendre_deriv_.resize(n_tri * n_lat_);
  for (int m = 0; m <= lmax; ++m) {
    double prefix = seed_log_prefix(m);
    for (int i = 0; i < n_lat_; ++i) {
      legendre_sweep(lmax, m, x_[i], prefix, [&](int l, double v) {
        legendre_[tri_index(l, m) * n_lat_ + i] = v;
      });
    }
    // dQ/d(colat) = (l x Q_lm - r_lm Q_{l-1,m}) / sin(colat)
    for (int l = m; l <= lmax; ++l) {
      const double* q = legendre_row(l, m);
      const double* qm1 = (l > m) ? legendre_row(l - 1, m) : nullptr;
      double r = (l > m) ? std::sqrt((2.0 * l + 1.0) *
                                     (static_cast<double>(l) * l - static_cast<double>(m) * m) /
                                     (2.0 * l - 1.0))
                         : 0.0;
      double* out = &legendre_deriv_[tri_index(l, m) * n_lat_];
      for (int i = 0; i < n_lat_; ++i) {
        double num = l * x_[i] * q[i] - (qm1 ? r * qm1[i] : 0.0);
        out[i] = num / sin_colat_[i];
      }
    }
  }

  plans_ = std::make_unique<FftPlans>();
  std::vector<std::complex<double>> scratch(n_lon_);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  plans_->forward =
      fftw_plan_dft_1d(n_lon_, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans_->backward =
      fftw_plan_dft_1d(n_lon_, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
}

Grid::~Grid() = default;

std::shared_ptr<const Grid> Grid::make(int lmax) {
  return std::shared_ptr<const Grid>(new Grid(lmax));
}

double Grid::longitude(int j) const { return kTwoPi * j / n_lon_; }

const double* Grid::legendre_row(int l, int m) const {
  return &legendre_[tri_index(l, m) * n_lat_];
}

const double* Grid::legendre_deriv_row(int l, int m) const {
  return &legendre_deriv_[tri_index(l, m) * n_lat_];
}

void Grid::fft_row(std::complex<double>* row, int sign) const {
  auto* buf = reinterpret_cast<fftw_complex*>(row);
  fftw_execute_dft(sign < 0 ? plans_->forward : plans_->backward, buf, buf);
}

}  // namespace sqg
