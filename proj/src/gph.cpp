#include "longmem/gph.hpp"

#include <cmath>
#include <numbers>

#include "longmem/errors.hpp"

namespace longmem {

namespace {

void check_bandwidth(std::size_t n, std::size_t m, int r) {
  if (m < 2) throw ArgumentError("gph: bandwidth m must be >= 2");
  const std::size_t nt = n_tilde_for(n, r);
  if (static_cast<std::size_t>(r + 1) * (m + 1) >= nt)
    throw ArgumentError("gph: bandwidth too large, need (r+1)(m+1) < n_tilde");
}

double log_regressor(std::size_t index, std::size_t n) {
  return std::log(std::abs(2.0 * std::sin(fourier_freq(index, n) / 2.0)));
}

}  // namespace

std::size_t regression_index(std::size_t k, int r) {
  return r == 0 ? k : static_cast<std::size_t>(r + 1) * k + 1;
}

std::pair<std::vector<double>, double> regressors(std::size_t n, std::size_t m, int r) {
  check_bandwidth(n, m, r);
  std::vector<double> nu(m);
  double mean = 0.0;
  for (std::size_t k = 1; k <= m; ++k) {
    nu[k - 1] = log_regressor(regression_index(k, r), n);
    mean += nu[k - 1];
  }
  mean /= static_cast<double>(m);
  double s2 = 0.0;
  for (double& v : nu) {
    v = -2.0 * (v - mean);
    s2 += v * v;
  }
  return {std::move(nu), s2};
}

GphFit estimate_from_periodogram(const TaperedDft& dft, std::size_t m) {
  const int r = dft.order;
  auto [nu, s2] = regressors(dft.n, m, r);
  GphFit fit;
  fit.m = m;
  fit.taper_order = r;
  fit.s_m2 = s2;
  double acc = 0.0;
  for (std::size_t k = 1; k <= m; ++k) {
    const double ord = dft.periodogram(regression_index(k, r));
    if (ord <= 0.0)
      throw DegenerateDataError("gph: zero periodogram ordinate, log-fit undefined");
    acc += nu[k - 1] * std::log(ord);
  }
  fit.d_hat = acc / s2;
  fit.nu = std::move(nu);
  return fit;
}

GphFit estimate(const TimeSeries& x, std::size_t m, int r) {
  check_bandwidth(x.size(), m, r);
  return estimate_from_periodogram(tapered_dft_all(x, r), m);
}

std::vector<double> scan_bandwidths(const TaperedDft& dft, std::size_t m_max) {
  check_bandwidth(dft.n, m_max, dft.order);
  std::vector<double> out(m_max + 1, 0.0);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 1; k <= m_max; ++k) {
    const std::size_t idx = regression_index(k, dft.order);
    const double x = log_regressor(idx, dft.n);
    const double ord = dft.periodogram(idx);
    if (ord <= 0.0)
      throw DegenerateDataError("gph: zero periodogram ordinate, log-fit undefined");
    const double y = std::log(ord);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    if (k >= 2) {
      const double km = static_cast<double>(k);
      out[k] = -0.5 * (km * sxy - sx * sy) / (km * sxx - sx * sx);
    }
  }
  return out;
}

std::pair<double, double> mse_decomposition(const GphFit& fit, const FarimaSpec& spec,
                                            std::size_t n) {
  const double fs0 = short_memory_factor(spec, 0.0);
  double b = 0.0;
  for (std::size_t k = 1; k <= fit.m; ++k) {
    const double lam = fourier_freq(regression_index(k, fit.taper_order), n);
    b += fit.nu[k - 1] * std::log(short_memory_factor(spec, lam) / fs0);
  }
  b /= fit.s_m2;
  const double w = (fit.d_hat - spec.d) - b;
  return {w, b};
}

double eta_bar() { return -0.5772156649015329; }
double sigma2_log() { return std::numbers::pi * std::numbers::pi / 6.0; }

}  // namespace longmem
