#include "longmem/tapered_dft.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <unordered_map>

#include "longmem/errors.hpp"
#include "longmem/fft.hpp"

namespace longmem {

namespace {

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

std::size_t n_tilde_for(std::size_t n, int r) {
  const long v = static_cast<long>(n) - 2 * r - 1;
  return v <= 0 ? 0 : static_cast<std::size_t>(v) / 2;
}

double taper_norm(int r) { return binom(2 * r, r); }

TaperedDft tapered_dft_all(const TimeSeries& x, int r) {
  const std::size_t n = x.size();
  if (r < 0) throw ArgumentError("tapered_dft_all: taper order must be >= 0");
  if (n <= 2 * static_cast<std::size_t>(r) + 1)
    throw ArgumentError("tapered_dft_all: need n > 2r + 1");
  const std::size_t nt = n_tilde_for(n, r);

  // F[k] = sum_{t=0}^{n-1} X_{t+1} e^{-2 pi i t k/n}; for real input,
  // d0_k = (2 pi n)^{-1/2} e^{i lambda_k} conj(F[k])
  std::vector<std::complex<double>> bins;
  rfft(x, bins);
  const double scale0 = 1.0 / std::sqrt(kTwoPi * static_cast<double>(n));
  std::vector<std::complex<double>> d0(nt + static_cast<std::size_t>(r) + 1);
  for (std::size_t k = 1; k <= nt + static_cast<std::size_t>(r); ++k) {
    const double lam = fourier_freq(k, n);
    d0[k] = scale0 * std::polar(1.0, lam) * std::conj(bins[k]);
  }

  TaperedDft out;
  out.order = r;
  out.n = n;
  out.n_tilde = nt;
  out.coeffs.resize(nt);
  if (r == 0) {
    for (std::size_t k = 1; k <= nt; ++k) out.coeffs[k - 1] = d0[k];
    return out;
  }
  const double inv_sqrt_ar = 1.0 / std::sqrt(taper_norm(r));
  for (std::size_t k = 1; k <= nt; ++k) {
    std::complex<double> acc = 0.0;
    double sign = 1.0;
    for (int s = 0; s <= r; ++s, sign = -sign) acc += sign * binom(r, s) * d0[k + s];
    out.coeffs[k - 1] = inv_sqrt_ar * acc;
  }
  return out;
}

std::complex<double> normalized_dft(const TaperedDft& dft, const FarimaSpec& spec,
                                    std::size_t k) {
  if (k < 1 || k > dft.n_tilde) throw ArgumentError("normalized_dft: k out of range");
  const double f = spectral_density(spec, fourier_freq(k, dft.n));
  return dft.coeff(k) / std::sqrt(f);
}

std::complex<double> kernel_value(int r, std::size_t n, double lambda) {
  if (r < 0 || n == 0) throw ArgumentError("kernel_value: bad arguments");
  // geometric sum S(mu) = sum_{t=1}^n e^{i t mu}
  const auto geom = [n](double mu) -> std::complex<double> {
    const std::complex<double> z = std::polar(1.0, mu);
    const std::complex<double> zm1 = z - 1.0;
    if (std::abs(zm1) < 1e-12) return static_cast<double>(n);
    return z * (std::polar(1.0, mu * static_cast<double>(n)) - 1.0) / zm1;
  };
  std::complex<double> acc = 0.0;
  double sign = 1.0;
  for (int s = 0; s <= r; ++s, sign = -sign)
    acc += sign * binom(r, s) * geom(lambda + kTwoPi * s / static_cast<double>(n));
  return acc / std::sqrt(static_cast<double>(n) * taper_norm(r));
}

double sigma_r(int r, int l) {
  if (std::abs(l) > r) return 0.0;
  const double sign = (l % 2 == 0) ? 1.0 : -1.0;
  return sign * binom(2 * r, r + l) / taper_norm(r);
}

Eigen::MatrixXd asymptotic_cov(const std::vector<std::size_t>& k, int r) {
  const std::size_t u = k.size();
  if (u == 0) throw ArgumentError("asymptotic_cov: empty tuple");
  for (std::size_t i = 1; i < u; ++i)
    if (k[i] <= k[i - 1]) throw ArgumentError("asymptotic_cov: tuple must increase");
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(2 * u, 2 * u);
  for (std::size_t i = 0; i < u; ++i)
    for (std::size_t j = 0; j < u; ++j) {
      const double c = 0.5 * sigma_r(r, static_cast<int>(k[i]) - static_cast<int>(k[j]));
      v(2 * i, 2 * j) = c;
      v(2 * i + 1, 2 * j + 1) = c;
    }
  return v;
}

namespace {

// n-th roots of unity, cached per n (read-mostly; guarded for concurrent fill)
const std::vector<std::complex<double>>& root_table(std::size_t n) {
  static std::mutex mu;
  static std::unordered_map<std::size_t, std::vector<std::complex<double>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> t(n);
  for (std::size_t m = 0; m < n; ++m)
    t[m] = std::polar(1.0, kTwoPi * static_cast<double>(m) / static_cast<double>(n));
  return cache.emplace(n, std::move(t)).first->second;
}

inline std::size_t mod_n(long v, long n) {
  long m = v % n;
  if (m < 0) m += n;
  return static_cast<std::size_t>(m);
}

// unnormalized pair moments of the order-0 transform
struct BaseCov {
  const std::vector<std::complex<double>>& root;
  long n;

  // G_h(m) = sum_{s=smin(h)}^{smax(h)} e^{2 pi i m s / n} in closed form
  std::complex<double> lag_sum(long h, long m) const {
    const long smin = std::max(1l, 1l - h);
    const long smax = std::min(n, n - h);
    const long cnt = smax - smin + 1;
    if (mod_n(m, n) == 0) return static_cast<double>(cnt);
    const std::complex<double> w = root[mod_n(m, n)];
    return root[mod_n(m * smin, n)] * (root[mod_n(m * cnt, n)] - 1.0) / (w - 1.0);
  }
};

}  // namespace

DftCovariance exact_dft_cov(const FarimaSpec& spec, std::size_t n, int r, std::size_t k,
                            std::size_t j, std::size_t max_lag) {
  if (n == 0) throw ArgumentError("exact_dft_cov: n must be >= 1");
  const std::size_t nt = n_tilde_for(n, r);
  if (k < 1 || k > nt || j < 1 || j > nt)
    throw ArgumentError("exact_dft_cov: frequency index out of range");
  if (n > (1u << 16)) throw ResourceError("exact_dft_cov: n > 65536");
  if (max_lag == 0 || max_lag > n - 1) max_lag = n - 1;

  const std::vector<double> gamma = autocovariance(spec, max_lag);
  const auto& root = root_table(n);
  const BaseCov base{root, static_cast<long>(n)};
  const long nn = static_cast<long>(n);

  // E0cross(a,b) = E[d0_a conj(d0_b)], E0same(a,b) = E[d0_a d0_b], exact sums
  // over |t - s| <= max_lag
  const auto accumulate = [&](long a, long sum_index) {
    std::complex<double> acc = gamma[0] * base.lag_sum(0, sum_index);
    for (long h = 1; h <= static_cast<long>(max_lag); ++h) {
      const std::complex<double> ph = root[mod_n(h * a, nn)];
      acc += gamma[static_cast<std::size_t>(h)] *
             (ph * base.lag_sum(h, sum_index) + std::conj(ph) * base.lag_sum(-h, sum_index));
    }
    return acc / (kTwoPi * static_cast<double>(n));
  };
  const auto e0_cross = [&](long a, long b) { return accumulate(a, a - b); };
  const auto e0_same = [&](long a, long b) { return accumulate(a, a + b); };

  std::complex<double> cross = 0.0, same = 0.0;
  const double inv_ar = 1.0 / taper_norm(r);
  for (int p = 0; p <= r; ++p)
    for (int q = 0; q <= r; ++q) {
      const double w =
          ((p + q) % 2 == 0 ? 1.0 : -1.0) * binom(r, p) * binom(r, q) * inv_ar;
      cross += w * e0_cross(static_cast<long>(k) + p, static_cast<long>(j) + q);
      same += w * e0_same(static_cast<long>(k) + p, static_cast<long>(j) + q);
    }

  DftCovariance out;
  const double fk = spectral_density(spec, fourier_freq(k, n));
  const double fj = spectral_density(spec, fourier_freq(j, n));
  const double denom = std::sqrt(fk * fj);
  out.conj_pair = cross / denom;
  out.plain_pair = same / denom;

  if (max_lag < n - 1) {
    // |gamma(h)| <= c h^{2d-1} fitted at the truncation point; the dropped
    // (t, s) pairs number (n - h) per lag, both signs
    const double glast = std::abs(gamma[max_lag]);
    const double expo = 2.0 * spec.d - 1.0;
    const double c = glast / std::pow(static_cast<double>(max_lag), expo);
    double tail = 0.0;
    for (std::size_t h = max_lag + 1; h < n; ++h)
      tail += 2.0 * static_cast<double>(n - h) * c * std::pow(static_cast<double>(h), expo);
    out.tail_bound = tail / (kTwoPi * static_cast<double>(n) * denom);
  }
  return out;
}

}  // namespace longmem
