#pragma once
#include <cstddef>
#include <utility>
#include <vector>

#include "longmem/farima.hpp"
#include "longmem/simulate.hpp"
#include "longmem/tapered_dft.hpp"

namespace longmem {

// Log-periodogram regression of order r.  Regression ordinates:
//   r = 0: lambda_k, k = 1..m (classic estimator)
//   r >= 1: lambda_{(r+1)k+1}, k = 1..m (every (r+1)-th frequency, offset so
//           ordinates are uncorrelated in the limit)
std::size_t regression_index(std::size_t k, int r);

// centered regressors nu_k = -2(log|2 sin(lambda/2)| - mean) at the regression
// frequencies, and their sum of squares s_m^2
std::pair<std::vector<double>, double> regressors(std::size_t n, std::size_t m, int r);

struct GphFit {
  double d_hat = 0.0;
  std::size_t m = 0;
  int taper_order = 0;
  double s_m2 = 0.0;
  std::vector<double> nu;
};

// d_hat = s_m^{-2} sum_k nu_k log I_{(r+1)k+1}; throws DegenerateDataError if
// any used ordinate is zero
GphFit estimate_from_periodogram(const TaperedDft& dft, std::size_t m);
GphFit estimate(const TimeSeries& x, std::size_t m, int r);

// d_hat for every m in 2..m_max from one periodogram, via prefix sums
// (identical values to estimate_from_periodogram, one log per ordinate)
std::vector<double> scan_bandwidths(const TaperedDft& dft, std::size_t m_max);

// Diagnostic split d_hat - d = W_m + b_m: b_m is the deterministic bias term
// s_m^{-2} sum nu_k log(f*(lambda)/f*(0)) under the true model, W_m the rest.
std::pair<double, double> mse_decomposition(const GphFit& fit, const FarimaSpec& spec,
                                            std::size_t n);

// E log(chi^2_2 / 2) and var(log chi^2_2): the centering and variance constants
// of the regression residuals
double eta_bar();    // -0.5772156649... (negated Euler-Mascheroni)
double sigma2_log(); // pi^2/6

}  // namespace longmem
