// Tests for the log-periodogram regression estimator, its bandwidth scan, and
// the bias/variance decomposition.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "longmem/errors.hpp"
#include "longmem/farima.hpp"
#include "longmem/gph.hpp"
#include "longmem/innovations.hpp"
#include "longmem/simulate.hpp"
#include "longmem/tapered_dft.hpp"

using namespace longmem;

namespace {
constexpr double kPi = 3.14159265358979323846;

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (double(n) * sxy - sx * sy) / (double(n) * sxx - sx * sx);
}
}  // namespace

TEST_CASE("regression ordinate indexing skips frequencies for tapered orders") {
  CHECK(regression_index(1, 0) == 1);
  CHECK(regression_index(7, 0) == 7);
  CHECK(regression_index(1, 1) == 3);
  CHECK(regression_index(7, 1) == 15);
  CHECK(regression_index(1, 2) == 4);
  CHECK(regression_index(5, 2) == 16);
}

TEST_CASE("regressors: centered, positive energy, asymptotic scale 4m") {
  for (int r : {0, 1}) {
    auto [nu, s2] = regressors(100000, 500, r);
    REQUIRE(nu.size() == 500);
    double sum = 0.0;
    for (double v : nu) sum += v;
    CHECK(std::fabs(sum) <= 1e-9 * 500.0);
    CHECK(s2 > 0.0);
    CHECK(s2 / (4.0 * 500.0) == doctest::Approx(1.0).epsilon(0.15));
  }
  auto [nu2, s2_small] = regressors(64, 2, 0);
  CHECK(s2_small > 0.0);
  CHECK(nu2.size() == 2);
}

TEST_CASE("bandwidth precondition names the constraint") {
  // n = 250, r = 1: n_tilde = 123, so m = 61 gives 2 * 62 = 124 >= 123.
  CHECK_NOTHROW(regressors(250, 60, 1));
  try {
    regressors(250, 61, 1);
    FAIL("expected ArgumentError");
  } catch (const ArgumentError& e) {
    CHECK(std::string(e.what()).find("(r+1)(m+1) < n_tilde") != std::string::npos);
  }
  CHECK_THROWS_AS(regressors(250, 1, 0), ArgumentError);  // m < 2
}

TEST_CASE("an exactly log-linear periodogram is recovered exactly") {
  for (int r : {0, 1, 2}) {
    for (double d : {-0.4, 0.0, 0.25, 0.45}) {
      const std::size_t n = 512;
      TaperedDft dft;
      dft.order = r;
      dft.n = n;
      dft.n_tilde = n_tilde_for(n, r);
      dft.coeffs.assign(dft.n_tilde, {0.0, 0.0});
      for (std::size_t idx = 1; idx <= dft.n_tilde; ++idx) {
        const double logI =
            0.7 - 2.0 * d * std::log(std::fabs(2.0 * std::sin(fourier_freq(idx, n) / 2.0)));
        dft.coeffs[idx - 1] = std::sqrt(std::exp(logI));
      }
      auto fit = estimate_from_periodogram(dft, 40);
      CHECK(fit.d_hat == doctest::Approx(d).epsilon(1e-10));
      CHECK(fit.m == 40);
      CHECK(fit.taper_order == r);
    }
  }
}

TEST_CASE("scale invariance: rescaling the series does not move the estimate") {
  FarimaSpec spec;
  spec.d = 0.3;
  InnovationSpec innov{InnovationKind::Gaussian};
  auto x = simulate_truncated_ma(spec, innov, 512, 2000, SeedSpec{5ull, 0});
  auto fit = estimate(x, 32, 1);
  TimeSeries y(x);
  for (auto& v : y) v *= 1713.25;
  auto fit2 = estimate(y, 32, 1);
  CHECK(std::fabs(fit.d_hat - fit2.d_hat) <= 1e-12);
}

TEST_CASE("white noise: the estimator is centered at zero") {
  FarimaSpec white;
  InnovationSpec innov{InnovationKind::Gaussian};
  const int reps = 500;
  double acc = 0.0, acc2 = 0.0;
  for (int rep = 0; rep < reps; ++rep) {
    auto x = simulate_truncated_ma(white, innov, 1024, 8, SeedSpec{606ull, uint64_t(rep)});
    const double dh = estimate(x, 64, 1).d_hat;
    acc += dh;
    acc2 += dh * dh;
  }
  const double mean = acc / reps;
  const double var = acc2 / reps - mean * mean;
  const double se = std::sqrt(var / reps);
  CHECK(std::fabs(mean) <= 3.0 * se);
}

TEST_CASE("decomposition: estimation error splits into noise plus bias") {
  FarimaSpec spec;
  spec.d = 0.3;
  spec.ar = {0.3};
  InnovationSpec innov{InnovationKind::Laplace};
  auto x = simulate_truncated_ma(spec, innov, 1024, 5000, SeedSpec{42ull, 1});
  auto fit = estimate(x, 48, 1);
  auto [w, b] = mse_decomposition(fit, spec, 1024);
  CHECK(fit.d_hat - spec.d == doctest::Approx(w + b).epsilon(1e-12));
  CHECK(std::isfinite(b));
  // The bias term is deterministic: a second draw gives the same b.
  auto x2 = simulate_truncated_ma(spec, innov, 1024, 5000, SeedSpec{42ull, 2});
  auto fit2 = estimate(x2, 48, 1);
  auto [w2, b2] = mse_decomposition(fit2, spec, 1024);
  CHECK(b == doctest::Approx(b2).epsilon(1e-14));
  CHECK(w != w2);
}

TEST_CASE("bias decays at the squared-bandwidth rate for a smooth factor") {
  FarimaSpec spec;
  spec.d = 0.3;
  spec.ar = {0.3};
  const std::size_t n = 4096;
  std::vector<double> lx, ly;
  for (std::size_t m : {16u, 32u, 64u, 128u, 256u, 512u}) {
    auto [nu, s2] = regressors(n, m, 1);
    GphFit fit;
    fit.m = m;
    fit.taper_order = 1;
    fit.s_m2 = s2;
    fit.nu = nu;
    auto [w, b] = mse_decomposition(fit, spec, n);
    REQUIRE(std::fabs(b) > 0.0);
    lx.push_back(std::log(double(m) / double(n)));
    ly.push_back(std::log(std::fabs(b)));
  }
  const double slope = ols_slope(lx, ly);
  CHECK(slope >= 1.7);
  CHECK(slope <= 2.3);
}

TEST_CASE("variance scales like sigma^2 / s_m^2 across bandwidths") {
  FarimaSpec white;
  InnovationSpec innov{InnovationKind::Gaussian};
  const std::size_t n = 1 << 14;
  const int reps = 800;
  std::vector<std::size_t> ms = {64, 256};
  std::vector<double> var(ms.size(), 0.0);
  std::vector<double> mean(ms.size(), 0.0);
  for (int rep = 0; rep < reps; ++rep) {
    auto x = simulate_truncated_ma(white, innov, n, 8, SeedSpec{909ull, uint64_t(rep)});
    auto dft = tapered_dft_all(x, 1);
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const double dh = estimate_from_periodogram(dft, ms[i]).d_hat;
      mean[i] += dh;
      var[i] += dh * dh;
    }
  }
  for (std::size_t i = 0; i < ms.size(); ++i) {
    mean[i] /= reps;
    var[i] = var[i] / reps - mean[i] * mean[i];
    const double theory = sigma2_log() / regressors(n, ms[i], 1).second;
    CHECK(var[i] == doctest::Approx(theory).epsilon(0.20));
  }
  // m * Var is roughly flat in m.
  const double r01 =
      (double(ms[0]) * var[0]) / (double(ms[1]) * var[1]);
  CHECK(r01 > 0.75);
  CHECK(r01 < 1.35);
}

TEST_CASE("the bandwidth scan equals the one-shot estimator at every m") {
  FarimaSpec spec;
  spec.d = 0.2;
  InnovationSpec innov{InnovationKind::CenteredExponential};
  auto x = simulate_truncated_ma(spec, innov, 1024, 2000, SeedSpec{77ull, 0});
  auto dft = tapered_dft_all(x, 1);
  auto scan = scan_bandwidths(dft, 100);
  REQUIRE(scan.size() == 101);
  CHECK(scan[0] == 0.0);
  CHECK(scan[1] == 0.0);
  for (std::size_t m = 2; m <= 100; ++m) {
    const double one = estimate_from_periodogram(dft, m).d_hat;
    CHECK(scan[m] == doctest::Approx(one).epsilon(1e-10));
  }
}

TEST_CASE("degenerate data raises instead of returning garbage") {
  TimeSeries zeros(256, 0.0);
  CHECK_THROWS_AS(estimate(zeros, 16, 0), DegenerateDataError);
  auto dft = tapered_dft_all(zeros, 1);
  CHECK_THROWS_AS(scan_bandwidths(dft, 16), DegenerateDataError);
}

TEST_CASE("residual constants") {
  CHECK(eta_bar() == doctest::Approx(-0.5772156649015329).epsilon(1e-15));
  CHECK(sigma2_log() == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-15));
}
