#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "sqg/errors.hpp"

namespace sqg {

// Gauss-Legendre x equispaced collocation grid with precomputed normalized
// associated Legendre tables.  Immutable after construction; shareable
// across threads.
class Grid {
 public:
  static std::shared_ptr<const Grid> make(int lmax);
  ~Grid();

  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  int lmax() const { return lmax_; }
  int n_lat() const { return n_lat_; }
  int n_lon() const { return n_lon_; }

  const std::vector<double>& colatitudes() const { return colat_; }
  const std::vector<double>& cos_colat() const { return x_; }
  const std::vector<double>& sin_colat() const { return sin_colat_; }
  const std::vector<double>& quad_weights() const { return weights_; }
  double longitude(int j) const;

  // Q_{lm}(x_i) with Y_{lm} = Q_{lm}(cos colat) e^{i m lon}, m >= 0.
  // Layout: contiguous over latitude nodes for fixed (l, m).
  const double* legendre_row(int l, int m) const;
  // d/d(colat) Q_{lm} at the nodes.
  const double* legendre_deriv_row(int l, int m) const;

  // In-place FFT of one longitude row, length n_lon.
  // sign -1: forward (analysis), sign +1: inverse (synthesis, unnormalized).
  void fft_row(std::complex<double>* row, int sign) const;

 private:
  explicit Grid(int lmax);

  int lmax_, n_lat_, n_lon_;
  std::vector<double> colat_, x_, sin_colat_, weights_;
  std::vector<double> legendre_, legendre_deriv_;  // triangular (l,m) x n_lat
  struct FftPlans;
  std::unique_ptr<FftPlans> plans_;
};

// Gauss-Legendre nodes (ascending) and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Q_{lm}(cos colat) for all l in [m, lmax] at a single point; out has
// lmax - m + 1 entries.  Underflow-safe for high m near the poles.
void legendre_column(int lmax, int m, double cos_colat, double* out);

}  // namespace sqg
