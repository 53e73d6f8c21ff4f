#include "longmem/farima.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "longmem/errors.hpp"
#include "longmem/fft.hpp"

namespace longmem {

namespace {

// roots of 1 - sum phi_i z^i must lie outside the closed unit disk
void check_ar_roots(const std::vector<double>& ar) {
  const std::size_t p = ar.size();
  if (p == 0) return;
  if (ar[p - 1] == 0.0) {
    std::vector<double> trimmed(ar.begin(), ar.end() - 1);
    while (!trimmed.empty() && trimmed.back() == 0.0) trimmed.pop_back();
    check_ar_roots(trimmed);
    return;
  }
  // monic form: z^p - (phi_1/.. ) ... companion of c(z) = z^p + c_{p-1} z^{p-1} + ... + c_0
  // with 1 - sum phi_i z^i = -phi_p (z^p + (phi_{p-1}/phi_p) z^{p-1} + ... - 1/phi_p)
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<int>(p), static_cast<int>(p));
  for (std::size_t i = 0; i + 1 < p; ++i) companion(static_cast<int>(i) + 1, static_cast<int>(i)) = 1.0;
  // coefficients of the monic polynomial: a_k for z^k, k = 0..p-1
  // 1 - sum_{i=1}^p phi_i z^i = 0  <=>  z^p + sum_{k=1}^{p-1} (phi_k/phi_p) z^k - 1/phi_p = 0... sign care:
  //   -phi_p z^p - ... - phi_1 z + 1 = 0  <=>  z^p + (phi_{p-1}/phi_p) z^{p-1} + ... + (phi_1/phi_p) z - 1/phi_p = 0
  std::vector<double> a(p, 0.0);
  a[0] = -1.0 / ar[p - 1];
  for (std::size_t k = 1; k < p; ++k) a[k] = ar[k - 1] / ar[p - 1];
  for (std::size_t k = 0; k < p; ++k) companion(static_cast<int>(k), static_cast<int>(p) - 1) = -a[k];
  Eigen::VectorXcd roots = companion.eigenvalues();
  for (int i = 0; i < roots.size(); ++i)
    if (std::abs(roots[i]) <= 1.0 + 1e-8)
      throw ModelError("autoregressive polynomial has a root inside/near the unit circle");
}

}  // namespace

void validate(const FarimaSpec& spec) {
  if (!(std::abs(spec.d) < 0.5)) throw ModelError("memory parameter must satisfy |d| < 1/2");
  check_ar_roots(spec.ar);
}

std::vector<double> ma_coefficients(const FarimaSpec& spec, std::size_t truncation) {
  if (truncation == 0) throw ArgumentError("ma_coefficients: truncation must be >= 1");
  validate(spec);
  std::vector<double> psi(truncation, 0.0);
  psi[0] = 1.0;
  for (std::size_t t = 1; t < truncation; ++t)
    psi[t] = psi[t - 1] * (static_cast<double>(t) - 1.0 + spec.d) / static_cast<double>(t);
  // MA part: multiply by theta(B)
  if (!spec.ma.empty()) {
    std::vector<double> out(truncation, 0.0);
    for (std::size_t t = 0; t < truncation; ++t) {
      double acc = psi[t];
      for (std::size_t i = 0; i < spec.ma.size() && i + 1 <= t; ++i)
        acc += spec.ma[i] * psi[t - i - 1];
      out[t] = acc;
    }
    psi.swap(out);
  }
  // AR part: divide by phi(B), i.e. b_t = psi_t + sum phi_i b_{t-i}
  if (!spec.ar.empty()) {
    for (std::size_t t = 1; t < truncation; ++t) {
      double acc = psi[t];
      for (std::size_t i = 0; i < spec.ar.size() && i + 1 <= t; ++i)
        acc += spec.ar[i] * psi[t - i - 1];
      psi[t] = acc;
    }
  }
  return psi;
}

std::complex<double> transfer(const FarimaSpec& spec, double lambda) {
  const std::complex<double> z = std::exp(std::complex<double>(0.0, -lambda));
  std::complex<double> theta(1.0, 0.0), phi(1.0, 0.0), zp = z;
  for (double c : spec.ma) {
    theta += c * zp;
    zp *= z;
  }
  zp = z;
  for (double c : spec.ar) {
    phi -= c * zp;
    zp *= z;
  }
  std::complex<double> frac(1.0, 0.0);
  if (spec.d != 0.0) {
    const std::complex<double> one_minus = 1.0 - z;
    if (std::abs(one_minus) == 0.0) throw SingularityError("transfer function singular at lambda = 0");
    frac = std::pow(one_minus, -spec.d);
  }
  return frac * theta / phi;
}

double spectral_density(const FarimaSpec& spec, double lambda) {
  if (lambda == 0.0 && spec.d > 0.0)
    throw SingularityError("spectral density singular at lambda = 0 for d > 0");
  const std::complex<double> psi = transfer(spec, lambda);
  return std::norm(psi) / (2.0 * std::numbers::pi);
}

double short_memory_factor(const FarimaSpec& spec, double lambda) {
  FarimaSpec arma = spec;
  arma.d = 0.0;
  return std::norm(transfer(arma, lambda)) / (2.0 * std::numbers::pi);
}

std::vector<double> autocovariance(const FarimaSpec& spec, std::size_t max_lag,
                                   std::size_t conv_truncation) {
  validate(spec);
  std::vector<double> g(max_lag + 1, 0.0);
  if (spec.ar.empty() && spec.ma.empty()) {
    if (spec.d == 0.0) {
      g[0] = 1.0;
      return g;
    }
    const double d = spec.d;
    g[0] = std::tgamma(1.0 - 2.0 * d) / std::pow(std::tgamma(1.0 - d), 2);
    for (std::size_t h = 1; h <= max_lag; ++h)
      g[h] = g[h - 1] * (static_cast<double>(h) - 1.0 + d) / (static_cast<double>(h) - d);
    return g;
  }
  // general case: gamma(h) = sum_j psi_j psi_{j+h} over a long truncated
  // impulse response, computed as an FFT autocorrelation
  const std::size_t T = std::max<std::size_t>(conv_truncation, max_lag + 2);
  std::vector<double> psi = ma_coefficients(spec, T);
  const std::size_t L = next_pow2(T + max_lag + 1);
  std::vector<double> padded(L, 0.0);
  std::copy(psi.begin(), psi.end(), padded.begin());
  std::vector<std::complex<double>> spec_fft;
  rfft(padded, spec_fft);
  for (auto& c : spec_fft) c = std::norm(c);
  std::vector<double> acf;
  irfft(spec_fft, static_cast<int>(L), acf);
  for (std::size_t h = 0; h <= max_lag; ++h) g[h] = acf[h];
  return g;
}

DlCoefficients durbin_levinson(const std::vector<double>& gamma) {
  const std::size_t n = gamma.size();
  if (n == 0) throw ArgumentError("durbin_levinson: empty autocovariance");
  DlCoefficients out;
  out.pred_var.reserve(n);
  out.pred_var.push_back(gamma[0]);
  if (gamma[0] <= 0.0) throw NumericalError("durbin_levinson: gamma(0) <= 0");
  std::vector<double> phi, prev;
  for (std::size_t h = 1; h < n; ++h) {
    double acc = gamma[h];
    for (std::size_t j = 1; j < h; ++j) acc -= phi[j - 1] * gamma[h - j];
    const double k = acc / out.pred_var.back();
    prev = phi;
    phi.resize(h);
    phi[h - 1] = k;
    for (std::size_t j = 1; j < h; ++j) phi[j - 1] = prev[j - 1] - k * prev[h - 1 - j];
    out.partial.push_back(k);
    const double v = out.pred_var.back() * (1.0 - k * k);
    if (!(v > 0.0)) throw NumericalError("durbin_levinson: non-positive prediction variance");
    out.pred_var.push_back(v);
  }
  return out;
}

}  // namespace longmem
