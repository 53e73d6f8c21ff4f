#include "longmem/functionals.hpp"

#include <cmath>
#include <numbers>

#include "longmem/errors.hpp"
#include "longmem/quadrature.hpp"

namespace longmem {

LaplacePair identity_pair() {
  return {[](double x) { return x; }, [](double y) { return y; }, "identity"};
}

LaplacePair log_pair() {
  constexpr double gamma_euler = 0.5772156649015329;
  return {[](double x) { return std::log(x); },
          [](double y) { return std::log(y) + gamma_euler; }, "log"};
}

LaplacePair make_checked_pair(std::function<double(double)> G,
                              std::function<double(double)> H, std::string name) {
  for (double x : {0.5, 1.0, 2.0}) {
    // split at v = 1/x to keep the integrand tame near possible H singularities
    const auto integrand = [&](double v) { return H(x * v) * std::exp(-v); };
    const double split = 1.0 / x;
    const double got =
        integrate_finite(integrand, 0.0, split, 1e-12, 1e-10) +
        integrate_upper(integrand, split, 1e-12, 1e-10);
    const double want = G(x);
    const double scale = std::max({1.0, std::abs(want)});
    if (std::abs(got - want) > 1e-6 * scale)
      throw ArgumentError("LaplacePair '" + name + "': transform identity fails at x=" +
                          std::to_string(x));
  }
  return {std::move(G), std::move(H), std::move(name)};
}

double weighted_functional(const std::vector<double>& periodogram,
                           const std::vector<double>& spectrum,
                           const std::vector<double>& beta,
                           const std::function<double(double)>& phi) {
  const std::size_t k = periodogram.size();
  if (spectrum.size() != k || beta.size() != k)
    throw ArgumentError("weighted_functional: array lengths differ");
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (!(spectrum[i] > 0.0))
      throw ArgumentError("weighted_functional: spectral value must be positive");
    acc += beta[i] * phi(periodogram[i] / spectrum[i]);
  }
  return acc;
}

double plugin_lambda(const TimeSeries& x, const LaplacePair& pair,
                     const std::function<double(double)>& w) {
  const TaperedDft dft = tapered_dft_all(x, 0);
  double acc = 0.0;
  for (std::size_t k = 1; k <= dft.n_tilde; ++k) {
    const double h = pair.H(dft.periodogram(k));
    if (!std::isfinite(h))
      throw DegenerateDataError("plugin_lambda: H undefined at a periodogram ordinate");
    acc += w(fourier_freq(k, dft.n)) * h;
  }
  return std::numbers::pi * acc / static_cast<double>(dft.n_tilde);
}

double reference_lambda(const FarimaSpec& spec, const LaplacePair& pair,
                        const std::function<double(double)>& w, std::size_t n) {
  const std::size_t nt = n_tilde_for(n, 0);
  if (nt == 0) throw ArgumentError("reference_lambda: n too small");
  double acc = 0.0;
  for (std::size_t k = 1; k <= nt; ++k) {
    const double lam = fourier_freq(k, n);
    const double f = spectral_density(spec, lam);
    if (!std::isfinite(f)) throw SingularityError("reference_lambda: f singular on grid");
    acc += w(lam) * pair.G(f);
  }
  return std::numbers::pi * acc / static_cast<double>(nt);
}

}  // namespace longmem
