#include "longmem/simulate.hpp"

#include <cmath>

#include "longmem/errors.hpp"
#include "longmem/fft.hpp"

namespace longmem {

TimeSeries filter_innovations(const FarimaSpec& spec, const std::vector<double>& z,
                              std::size_t n, std::size_t truncation) {
  if (n == 0) throw ArgumentError("filter_innovations: n must be >= 1");
  if (z.size() != truncation + n)
    throw ArgumentError("filter_innovations: need truncation + n innovations");
  std::vector<double> psi = ma_coefficients(spec, truncation);
  // drop the numerically dead tail (geometric ARMA decay underflows quickly);
  // the filter output is unchanged to full precision
  std::size_t t_eff = psi.size();
  while (t_eff > 1 && std::abs(psi[t_eff - 1]) < 1e-300) --t_eff;
  psi.resize(t_eff);
  // short filters: direct convolution is both faster than the FFT round-trip
  // and exact (the identity filter must return the innovations bit-for-bit)
  if (t_eff <= 64) {
    TimeSeries x(n);
    for (std::size_t t = 1; t <= n; ++t) {
      const std::size_t newest = truncation + t - 1;  // z index of Z_t
      double acc = 0.0;
      for (std::size_t j = 0; j < t_eff; ++j) acc += psi[j] * z[newest - j];
      x[t - 1] = acc;
    }
    return x;
  }
  // X_t = conv(psi, z-suffix)[t + t_eff - 1], with the suffix aligned so the
  // oldest needed innovation (time t - t_eff + 1) is included
  std::vector<double> tail(z.begin() + static_cast<std::ptrdiff_t>(truncation - t_eff),
                           z.end());
  std::vector<double> conv = convolve(psi, tail);
  TimeSeries x(n);
  for (std::size_t t = 1; t <= n; ++t) x[t - 1] = conv[t + t_eff - 1];
  return x;
}

TimeSeries simulate_truncated_ma(const FarimaSpec& spec, const InnovationSpec& innov,
                                 std::size_t n, std::size_t truncation, SeedSpec seed) {
  if (truncation == 0) throw ArgumentError("simulate_truncated_ma: truncation >= 1");
  std::vector<double> z = sample_innovations(innov, truncation + n, seed);
  return filter_innovations(spec, z, n, truncation);
}

TimeSeries simulate_gaussian_exact(const FarimaSpec& spec, std::size_t n, SeedSpec seed) {
  if (n == 0) throw ArgumentError("simulate_gaussian_exact: n must be >= 1");
  if (n > (1u << 16))
    throw ResourceError("simulate_gaussian_exact: n > 65536 (O(n^2) recursion)");
  const std::vector<double> gamma =
      autocovariance(spec, n > 0 ? n - 1 : 0, /*conv_truncation=*/1u << 20);
  const DlCoefficients dl = durbin_levinson(gamma);

  Rng rng(seed);
  TimeSeries x(n);
  x[0] = std::sqrt(dl.pred_var[0]) * rng.normal();
  // phi holds the order-h one-step predictor coefficients, updated in place
  std::vector<double> phi;
  phi.reserve(n);
  for (std::size_t h = 1; h < n; ++h) {
    const double k = dl.partial[h - 1];
    const std::size_t half = (h - 1) / 2;
    for (std::size_t j = 0; j < half; ++j) {
      const double a = phi[j], b = phi[h - 2 - j];
      phi[j] = a - k * b;
      phi[h - 2 - j] = b - k * a;
    }
    if ((h - 1) % 2 == 1) phi[half] -= k * phi[half];
    phi.push_back(k);
    double mean = 0.0;
    for (std::size_t j = 0; j < h; ++j) mean += phi[j] * x[h - 1 - j];
    x[h] = mean + std::sqrt(dl.pred_var[h]) * rng.normal();
  }
  return x;
}

}  // namespace longmem
