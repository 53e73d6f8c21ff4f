#pragma once
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "longmem/farima.hpp"
#include "longmem/simulate.hpp"

namespace longmem {

// lambda_k = 2 pi k / n
inline double fourier_freq(std::size_t k, std::size_t n) {
  return 2.0 * 3.141592653589793238462643383279502884 * static_cast<double>(k) /
         static_cast<double>(n);
}

// Taper-order-r DFT at the Fourier frequencies k = 1..n_tilde,
//   d_k = (2 pi n a_r)^{-1/2} sum_t (1 - e^{2 pi i t/n})^r X_t e^{i t lambda_k},
// a_r = binom(2r, r), n_tilde = floor((n - 2r - 1)/2).
struct TaperedDft {
  int order = 0;
  std::size_t n = 0;
  std::size_t n_tilde = 0;
  std::vector<std::complex<double>> coeffs;  // coeffs[k-1] = d_k

  const std::complex<double>& coeff(std::size_t k) const { return coeffs[k - 1]; }
  double periodogram(std::size_t k) const { return std::norm(coeffs[k - 1]); }
};

std::size_t n_tilde_for(std::size_t n, int r);

// binom(2r, r)
double taper_norm(int r);

// Computed by one length-n real FFT plus the exact binomial shift
// d_{r,k} = a_r^{-1/2} sum_s binom(r,s) (-1)^s d_{0,k+s}.
TaperedDft tapered_dft_all(const TimeSeries& x, int r);

// omega_k = sqrt(2 pi) d_k / |psi(lambda_k)| = d_k / sqrt(f(lambda_k))
std::complex<double> normalized_dft(const TaperedDft& dft, const FarimaSpec& spec,
                                    std::size_t k);

// D_{r,n}(lambda) = (n a_r)^{-1/2} sum_{t=1}^n (1 - e^{2 pi i t/n})^r e^{i t lambda},
// via closed geometric sums at the r+1 shifted frequencies
std::complex<double> kernel_value(int r, std::size_t n, double lambda);

// limiting DFT covariance sequence: 0 for |l| > r, else (-1)^l binom(2r, r+l)/a_r
double sigma_r(int r, int l);

// 2u x 2u limiting covariance of (Re omega_{k_1}, Im omega_{k_1}, ...):
// cos/cos and sin/sin entries sigma_r(k_i - k_j)/2, cross entries 0
Eigen::MatrixXd asymptotic_cov(const std::vector<std::size_t>& k, int r);

// Exact finite-n second moments of the normalized DFT under a FarimaSpec.
struct DftCovariance {
  std::complex<double> conj_pair;   // E[omega_k conj(omega_j)]
  std::complex<double> plain_pair;  // E[omega_k omega_j]
  double tail_bound = 0.0;          // bound on the neglected |lag| > max_lag mass
};

// O(n) per pair after an O(n) root-table setup: the (t, s) double sum grouped
// by lag h = t - s, each inner sum in closed geometric form. max_lag = 0 means
// n - 1, i.e. no truncation (the double sum never sees longer lags).
DftCovariance exact_dft_cov(const FarimaSpec& spec, std::size_t n, int r, std::size_t k,
                            std::size_t j, std::size_t max_lag = 0);

}  // namespace longmem
