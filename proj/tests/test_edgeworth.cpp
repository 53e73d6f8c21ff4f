// Tests for the higher-order density expansion machinery: coefficient arrays,
// cumulant tensors, expansion polynomials, densities, quasi-random moments,
// decorrelation bounds, and Hermite ranks.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "longmem/csv.hpp"
#include "longmem/edgeworth.hpp"
#include "longmem/errors.hpp"
#include "longmem/qmc.hpp"
#include "longmem/quadrature.hpp"
#include "longmem/tapered_dft.hpp"

using namespace longmem;

namespace {
constexpr double kPi = 3.14159265358979323846;

double phi1(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi); }

Eigen::MatrixXd identity1() {
  Eigen::MatrixXd v(1, 1);
  v(0, 0) = 1.0;
  return v;
}

CumulantTensor order3_1d(double c) {
  CumulantTensor t;
  t.order = 3;
  t.dim = 1;
  t.entries[MultiIndex{3, 0, 0, 0}] = c;
  return t;
}

CumulantTensor order4_1d(double e) {
  CumulantTensor t;
  t.order = 4;
  t.dim = 1;
  t.entries[MultiIndex{4, 0, 0, 0}] = e;
  return t;
}
}  // namespace

TEST_CASE("Sobol sequence: first points and dyadic equidistribution") {
  SobolSequence seq(2);
  double p[2];
  const double expect[5][2] = {
      {0.0, 0.0}, {0.5, 0.5}, {0.75, 0.25}, {0.25, 0.75}, {0.375, 0.375}};
  for (auto& row : expect) {
    seq.next(p);
    CHECK(p[0] == row[0]);
    CHECK(p[1] == row[1]);
  }
  // The first 2^10 points put exactly 2^8 in each quarter of [0,1)^2.
  SobolSequence seq2(2);
  int counts[4] = {0, 0, 0, 0};
  for (int i = 0; i < 1024; ++i) {
    seq2.next(p);
    counts[(p[0] < 0.5 ? 0 : 1) + (p[1] < 0.5 ? 0 : 2)]++;
  }
  for (int c : counts) CHECK(c == 256);

  CHECK_THROWS_AS(SobolSequence(0), ArgumentError);
  CHECK_THROWS_AS(SobolSequence(7), ArgumentError);
  CHECK_THROWS_AS(SobolSequence(2, std::vector<std::uint32_t>{1u}), ArgumentError);
}

TEST_CASE("inverse normal cdf: high accuracy over the full range") {
  for (double pr : {1e-10, 1e-6, 0.02, 0.02425, 0.3, 0.5, 0.7, 0.97575, 1 - 1e-6}) {
    const double x = inverse_normal_cdf(pr);
    const double back = 0.5 * std::erfc(-x / std::sqrt(2.0));
    CHECK(std::fabs(back - pr) < 1e-12);
  }
  CHECK(inverse_normal_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK_THROWS_AS(inverse_normal_cdf(0.0), ArgumentError);
  CHECK_THROWS_AS(inverse_normal_cdf(1.0), ArgumentError);
  CHECK_THROWS_AS(inverse_normal_cdf(-0.2), ArgumentError);
}

TEST_CASE("coefficient vectors: white noise is the pure trigonometric array") {
  FarimaSpec white;
  const std::size_t n = 32, k = 3;
  auto coeffs = coefficient_vectors(white, n, 0, {k}, n);
  CHECK(coeffs.n == n);
  CHECK(coeffs.dim == 2);
  CHECK(coeffs.j_min == -long(n));
  REQUIRE(coeffs.vectors.size() == 2 * n + 1);
  const double lam = fourier_freq(k, n);
  for (long j = -long(n); j <= long(n); ++j) {
    const auto& u = coeffs.vectors[std::size_t(j + long(n))];
    if (j >= 1) {
      CHECK(u[0] == doctest::Approx(std::cos(j * lam) / std::sqrt(double(n)))
                        .epsilon(1e-14));
      CHECK(u[1] == doctest::Approx(std::sin(j * lam) / std::sqrt(double(n)))
                        .epsilon(1e-14));
    } else {
      CHECK(std::fabs(u[0]) < 1e-15);
      CHECK(std::fabs(u[1]) < 1e-15);
    }
  }
  REQUIRE(coeffs.v_exact.rows() == 2);
  CHECK(coeffs.v_exact.trace() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(coeffs.v_exact(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(coeffs.v_exact(1, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::fabs(coeffs.v_exact(0, 1)) < 1e-12);
  CHECK(coeffs.window_mass == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::fabs(coeffs.tail_mass) < 1e-12);
}

TEST_CASE("coefficient vectors: argument guards") {
  FarimaSpec white;
  CHECK_THROWS_AS(coefficient_vectors(white, 32, 0, {}, 32), ArgumentError);
  CHECK_THROWS_AS(coefficient_vectors(white, 32, 0, {1, 2, 3}, 32), ArgumentError);
  CHECK_THROWS_AS(coefficient_vectors(white, 32, 0, {2, 2}, 32), ArgumentError);
  CHECK_THROWS_AS(coefficient_vectors(white, 32, 0, {0}, 32), ArgumentError);
  CHECK_THROWS_AS(coefficient_vectors(white, 32, 0, {400}, 32), ArgumentError);
  CHECK_THROWS_AS(coefficient_vectors(white, 32, 0, {3}, 16), ArgumentError);
}

TEST_CASE("coefficient vectors: long-memory covariance agrees with the exact "
          "DFT covariance (two independent paths)") {
  FarimaSpec spec;
  spec.d = 0.3;
  const std::size_t n = 256, k = 10;
  auto coeffs = coefficient_vectors(spec, n, 1, {k});  // default window 4n
  REQUIRE(coeffs.v_exact.rows() == 2);
  const double trace = coeffs.v_exact.trace();
  CHECK(std::fabs(trace - 1.0) <= 0.25);
  auto cov = exact_dft_cov(spec, n, 1, k, k);
  CHECK(trace == doctest::Approx(cov.conj_pair.real()).epsilon(1e-8));
  // the off-diagonal structure also matches: Re E[w^2]/2 = (V00 - V11)/2 etc.
  const double re_plain = coeffs.v_exact(0, 0) - coeffs.v_exact(1, 1);
  const double im_plain = 2.0 * coeffs.v_exact(0, 1);
  CHECK(re_plain == doctest::Approx(cov.plain_pair.real()).epsilon(1e-8));
  CHECK(im_plain == doctest::Approx(cov.plain_pair.imag()).epsilon(1e-8));
  // window mass plus tail mass reproduces the trace exactly by construction,
  // and the default window leaves only a small tail
  CHECK(coeffs.window_mass + coeffs.tail_mass ==
        doctest::Approx(trace).epsilon(1e-12));
  CHECK(std::fabs(coeffs.tail_mass) < 0.05 * trace);
}

TEST_CASE("coefficient vectors: covariance eigenvalues stay in (0.1, 0.9)") {
  for (double d : {0.0, 0.3}) {
    FarimaSpec spec;
    spec.d = d;
    for (std::size_t k : {5u, 10u}) {
      auto coeffs = coefficient_vectors(spec, 256, 1, {k}, 1024);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(coeffs.v_exact);
      CHECK(es.eigenvalues().minCoeff() >= 0.1);
      CHECK(es.eigenvalues().maxCoeff() <= 0.9);
    }
  }
}

TEST_CASE("cumulant tensors: Gaussian innovations give exactly zero") {
  FarimaSpec spec;
  spec.d = 0.3;
  auto coeffs = coefficient_vectors(spec, 64, 1, {2}, 64);
  InnovationSpec gauss{InnovationKind::Gaussian};
  for (int order : {3, 4, 5}) {
    auto t = cumulant_tensor(coeffs, gauss, order);
    CHECK(t.order == order);
    CHECK(t.max_abs() == 0.0);
  }
  CHECK_THROWS_AS(cumulant_tensor(coeffs, gauss, 2), ArgumentError);
  CHECK_THROWS_AS(cumulant_tensor(coeffs, gauss, 6), ArgumentError);
}

TEST_CASE("cumulant tensors: closed-form values for the resonant frequency") {
  // n = 63, k = 21: 3k = 0 mod n, so third-order sums survive:
  // sum cos^3 = 63/4, sum cos sin^2 = -63/4, mixed odd sums vanish.
  FarimaSpec white;
  InnovationSpec cexp{InnovationKind::CenteredExponential};
  const std::size_t n = 63, k = 21;
  auto coeffs = coefficient_vectors(white, n, 0, {k}, n);
  auto t3 = cumulant_tensor(coeffs, cexp, 3);
  const double kappa3 = 2.0;
  const double expect = kappa3 * (63.0 / 4.0) / std::pow(63.0, 1.5);
  CHECK(t3.entries.at(MultiIndex{3, 0, 0, 0}) ==
        doctest::Approx(expect).epsilon(1e-13));
  CHECK(t3.entries.at(MultiIndex{1, 2, 0, 0}) ==
        doctest::Approx(-expect).epsilon(1e-13));
  // roundoff-zero: the genuine entries above sit at 6e-2, thirteen orders up
  CHECK(std::fabs(t3.entries.at(MultiIndex{2, 1, 0, 0})) < 1e-14);
  CHECK(std::fabs(t3.entries.at(MultiIndex{0, 3, 0, 0})) < 1e-14);

  // Brute-force oracle straight from the stored vectors.
  double brute = 0.0;
  for (const auto& u : coeffs.vectors) brute += u[0] * u[0] * u[0];
  CHECK(t3.entries.at(MultiIndex{3, 0, 0, 0}) ==
        doctest::Approx(kappa3 * brute).epsilon(1e-12));

  // Non-resonant frequency: all third-order entries vanish.
  auto c2 = coefficient_vectors(white, 64, 0, {5}, 64);
  auto t3z = cumulant_tensor(c2, cexp, 3);
  CHECK(t3z.max_abs() < 1e-15);

  // Fourth order at n = 64, k = 5: chi_40 = 3 kappa4/(8n), chi_22 = kappa4/(8n).
  auto t4 = cumulant_tensor(c2, cexp, 4);
  const double kappa4 = 6.0;
  CHECK(t4.entries.at(MultiIndex{4, 0, 0, 0}) ==
        doctest::Approx(3.0 * kappa4 / (8.0 * 64.0)).epsilon(1e-12));
  CHECK(t4.entries.at(MultiIndex{0, 4, 0, 0}) ==
        doctest::Approx(3.0 * kappa4 / (8.0 * 64.0)).epsilon(1e-12));
  CHECK(t4.entries.at(MultiIndex{2, 2, 0, 0}) ==
        doctest::Approx(kappa4 / (8.0 * 64.0)).epsilon(1e-12));
  CHECK(std::fabs(t4.entries.at(MultiIndex{3, 1, 0, 0})) < 1e-15);
  CHECK(std::fabs(t4.entries.at(MultiIndex{1, 3, 0, 0})) < 1e-15);
}

TEST_CASE("cumulant tensors: the tapered third-order scale is n^{-1/2}") {
  // White noise, r = 1, k = 1: sum c^3 = -3n/4 and sum c s^2 = -n/4 with
  // c_t = cos(t l1) - cos(t l2), so sqrt(n) chi_30 = -3 kappa3/(4 sqrt(8)).
  FarimaSpec white;
  InnovationSpec cexp{InnovationKind::CenteredExponential};
  const double kappa3 = 2.0;
  const double coef = -3.0 / (4.0 * std::pow(2.0, 1.5));
  for (std::size_t n : {64u, 256u}) {
    auto coeffs = coefficient_vectors(white, n, 1, {1}, n);
    auto t3 = cumulant_tensor(coeffs, cexp, 3);
    const double chi30 = t3.entries.at(MultiIndex{3, 0, 0, 0});
    const double chi12 = t3.entries.at(MultiIndex{1, 2, 0, 0});
    CHECK(std::sqrt(double(n)) * chi30 ==
          doctest::Approx(coef * kappa3).epsilon(1e-10));
    CHECK(chi12 == doctest::Approx(chi30 / 3.0).epsilon(1e-10));
    CHECK(std::fabs(t3.entries.at(MultiIndex{2, 1, 0, 0})) < 1e-14);
    CHECK(std::fabs(t3.entries.at(MultiIndex{0, 3, 0, 0})) < 1e-14);
  }
}

TEST_CASE("expansion polynomials: symbolic forms") {
  const double c = 0.6, e = 0.5;
  auto p1 = expansion_polynomials({order3_1d(c)}, 1);
  REQUIRE(p1.size() == 1);
  REQUIRE(p1[0].terms.size() == 1);
  CHECK(p1[0].terms.at(MultiIndex{3, 0, 0, 0}) ==
        doctest::Approx(c / 6.0).epsilon(1e-15));

  auto p2 = expansion_polynomials({order3_1d(c), order4_1d(e)}, 2);
  REQUIRE(p2.size() == 2);
  REQUIRE(p2[1].terms.size() == 2);
  CHECK(p2[1].terms.at(MultiIndex{4, 0, 0, 0}) ==
        doctest::Approx(e / 24.0).epsilon(1e-15));
  CHECK(p2[1].terms.at(MultiIndex{6, 0, 0, 0}) ==
        doctest::Approx(c * c / 72.0).epsilon(1e-15));
}

TEST_CASE("expansion density: closed form in one dimension") {
  const double c = 0.6;
  auto exp4 = make_expansion(identity1(), {order3_1d(c)}, 4);
  for (double x : {-2.0, -1.0, 0.0, 0.7, 1.5, 3.0}) {
    const double expect = phi1(x) * (1.0 + (c / 6.0) * (x * x * x - 3.0 * x));
    CHECK(edgeworth_density(exp4, &x) == doctest::Approx(expect).epsilon(1e-13));
    CHECK(gaussian_density(exp4, &x) == doctest::Approx(phi1(x)).epsilon(1e-13));
  }
  // order 5 with a zero fourth-order tensor adds (c^2/72) H_6
  auto exp5 = make_expansion(identity1(), {order3_1d(c), order4_1d(0.0)}, 5);
  for (double x : {-1.4, 0.5, 2.2}) {
    const double h3 = x * x * x - 3.0 * x;
    const double h6 = std::pow(x, 6) - 15.0 * std::pow(x, 4) + 45.0 * x * x - 15.0;
    const double expect = phi1(x) * (1.0 + (c / 6.0) * h3 + (c * c / 72.0) * h6);
    CHECK(edgeworth_density(exp5, &x) == doctest::Approx(expect).epsilon(1e-12));
  }
  // s = 3 is the plain Gaussian even with tensors supplied
  auto exp3 = make_expansion(identity1(), {order3_1d(c)}, 3);
  for (double x : {-0.3, 1.1}) {
    CHECK(edgeworth_density(exp3, &x) == doctest::Approx(phi1(x)).epsilon(1e-14));
  }
}

TEST_CASE("expansion density: finite-difference check of the derivative form") {
  // P_1(x) = -(c/6) phi'''(x); compare the correction against a central
  // finite difference of the Gaussian density.
  const double c = 0.9;
  auto exp4 = make_expansion(identity1(), {order3_1d(c)}, 4);
  const double h = 0.01;
  for (double x : {-1.5, 0.3, 2.0}) {
    auto g = [&](double t) { return phi1(t); };
    const double d3 =
        (g(x + 2 * h) - 2.0 * g(x + h) + 2.0 * g(x - h) - g(x - 2 * h)) /
        (2.0 * h * h * h);
    const double correction = edgeworth_density(exp4, &x) - gaussian_density(exp4, &x);
    CHECK(correction == doctest::Approx(-(c / 6.0) * d3).epsilon(2e-4));
  }
}

TEST_CASE("expansion construction guards") {
  const double c = 0.5;
  CHECK_THROWS_AS(make_expansion(identity1(), {order3_1d(c)}, 2), ArgumentError);
  CHECK_THROWS_AS(make_expansion(identity1(), {order3_1d(c)}, 6), ArgumentError);
  // s = 5 requires both order-3 and order-4 tensors
  CHECK_THROWS_AS(make_expansion(identity1(), {order3_1d(c)}, 5), ArgumentError);
  Eigen::MatrixXd singular = Eigen::MatrixXd::Zero(2, 2);
  CumulantTensor t3;
  t3.order = 3;
  t3.dim = 2;
  CHECK_THROWS_AS(make_expansion(singular, {t3}, 4), NumericalError);
}

TEST_CASE("expansion densities integrate to one") {
  // One-dimensional, orders 4 and 5.
  auto exp4 = make_expansion(identity1(), {order3_1d(0.4)}, 4);
  auto exp5 = make_expansion(identity1(), {order3_1d(0.4), order4_1d(0.3)}, 5);
  for (const auto* e : {&exp4, &exp5}) {
    auto f = [&](double x) { return edgeworth_density(*e, &x); };
    const double total = integrate_finite(f, -12.0, 12.0, 1e-12, 1e-10);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
    // the correction alone integrates to zero
    auto corr = [&](double x) {
      return edgeworth_density(*e, &x) - gaussian_density(*e, &x);
    };
    CHECK(std::fabs(integrate_finite(corr, -12.0, 12.0, 1e-12, 1e-10)) < 1e-8);
  }

  // Two-dimensional expansion from a real coefficient array (fourth-order
  // tensor only at this frequency), integrated by nested quadrature.
  FarimaSpec white;
  InnovationSpec cexp{InnovationKind::CenteredExponential};
  auto coeffs = coefficient_vectors(white, 64, 0, {5}, 64);
  std::vector<CumulantTensor> tensors = {cumulant_tensor(coeffs, cexp, 3),
                                         cumulant_tensor(coeffs, cexp, 4)};
  auto exp2d = make_expansion(coeffs.v_exact, tensors, 5);
  auto outer = [&](double x) {
    auto inner = [&](double y) {
      double pt[2] = {x, y};
      return edgeworth_density(exp2d, pt);
    };
    return integrate_finite(inner, -8.0, 8.0, 1e-11, 1e-9);
  };
  const double total2d = integrate_finite(outer, -8.0, 8.0, 1e-10, 1e-8);
  CHECK(total2d == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("Fourier transform of the first correction matches its symbol") {
  // For V = 1, chi_3 = c: integral sin(tx) P_1(x) dx = -(c/6) t^3 e^{-t^2/2},
  // and the cosine part vanishes by parity.
  const double c = 1.0;
  auto exp4 = make_expansion(identity1(), {order3_1d(c)}, 4);
  auto p1 = [&](double x) {
    return edgeworth_density(exp4, &x) - gaussian_density(exp4, &x);
  };
  for (double t : {0.0, 0.5, 1.0, 2.0}) {
    auto fs = [&](double x) { return std::sin(t * x) * p1(x); };
    auto fc = [&](double x) { return std::cos(t * x) * p1(x); };
    const double sin_part = integrate_finite(fs, -15.0, 15.0, 1e-12, 1e-9);
    const double cos_part = integrate_finite(fc, -15.0, 15.0, 1e-12, 1e-9);
    const double expect = -(c / 6.0) * t * t * t * std::exp(-0.5 * t * t);
    CHECK(std::fabs(sin_part - expect) < 1e-5);
    CHECK(std::fabs(cos_part) < 1e-6);
  }
}

TEST_CASE("moment expectation: antithetic exactness and known moments") {
  const double c = 0.5;
  auto exp4 = make_expansion(identity1(), {order3_1d(c)}, 4);
  // g == 1: the odd correction cancels in antithetic pairs, value is exact.
  auto one = [](const std::vector<double>&) { return 1.0; };
  auto m1 = moment_expectation(exp4, one, 1u << 14);
  CHECK(std::fabs(m1.value - 1.0) < 1e-12);
  CHECK(m1.se < 1e-12);
  // g = x^3: expectation under the expansion is exactly c.  The integrand has
  // x^6-scale tails, so the 16-replicate se estimate is itself noisy; the
  // absolute floors below stay two orders under the smallest defect a sign,
  // scale, or dropped-correction bug would cause (>= c/2 = 0.25).
  auto cube = [](const std::vector<double>& x) { return x[0] * x[0] * x[0]; };
  auto m3 = moment_expectation(exp4, cube, 1u << 18);
  CHECK(m3.se > 0.0);
  CHECK(std::fabs(m3.value - c) <= std::max(6.0 * m3.se, 0.03));
  // g = x^2: the order-3 correction does not move the second moment.
  auto sq = [](const std::vector<double>& x) { return x[0] * x[0]; };
  auto m2 = moment_expectation(exp4, sq, 1u << 18);
  CHECK(std::fabs(m2.value - 1.0) <= std::max(6.0 * m2.se, 1e-3));

  CHECK_THROWS_AS(moment_expectation(exp4, one, 100), ArgumentError);
}

TEST_CASE("moment expectation: two-dimensional trace recovery") {
  FarimaSpec white;
  InnovationSpec cexp{InnovationKind::CenteredExponential};
  auto coeffs = coefficient_vectors(white, 64, 0, {5}, 64);
  std::vector<CumulantTensor> tensors = {cumulant_tensor(coeffs, cexp, 3),
                                         cumulant_tensor(coeffs, cexp, 4)};
  auto exp2d = make_expansion(coeffs.v_exact, tensors, 5);
  auto one = [](const std::vector<double>&) { return 1.0; };
  auto m1 = moment_expectation(exp2d, one, 1u << 17);
  CHECK(std::fabs(m1.value - 1.0) <= std::max(5.0 * m1.se, 1e-6));
  auto norm2 = [](const std::vector<double>& x) {
    return x[0] * x[0] + x[1] * x[1];
  };
  auto mt = moment_expectation(exp2d, norm2, 1u << 17);
  // E ||x||^2 under the expansion: trace(V) plus the fourth-order tilt, which
  // is zero because H-polynomial corrections keep second moments when the
  // order-3 tensor vanishes... the tilt adds chi-weighted fourth Hermite
  // moments that vanish under the Gaussian, so trace(V) remains the target.
  CHECK(std::fabs(mt.value - coeffs.v_exact.trace()) <=
        std::max(5.0 * mt.se, 2e-4));
}

TEST_CASE("decorrelation bound: closed forms and guards") {
  DecorrelationParams local;
  local.regime = DecorrelationParams::Regime::local;
  local.beta = 1.0;
  CHECK(decorrelation_bound(4, 4, 256, local) ==
        doctest::Approx(0.28125).epsilon(1e-15));
  DecorrelationParams global;
  global.regime = DecorrelationParams::Regime::global;
  CHECK(decorrelation_bound(4, 9, 256, global) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  // for n -> inf the local bound approaches (jk)^{-1/2}
  CHECK(decorrelation_bound(5, 5, 1u << 30, local) ==
        doctest::Approx(0.2).epsilon(1e-6));
  CHECK_THROWS_AS(decorrelation_bound(9, 4, 256, local), ArgumentError);
  CHECK_THROWS_AS(decorrelation_bound(0, 4, 256, local), ArgumentError);
  DecorrelationParams bad;
  bad.beta = 0.0;
  CHECK_THROWS_AS(decorrelation_bound(4, 9, 256, bad), ArgumentError);
}

TEST_CASE("Hermite rank detection") {
  Eigen::MatrixXd gamma = 0.5 * Eigen::MatrixXd::Identity(2, 2);
  const std::size_t samples = 1u << 18;

  auto linear = [](const std::vector<double>& x) { return x[0]; };
  CHECK(hermite_rank(linear, gamma, 4, samples) == 1);

  auto quad = [](const std::vector<double>& x) {
    return x[0] * x[0] + x[1] * x[1];
  };
  CHECK(hermite_rank(quad, gamma, 4, samples) == 2);

  auto cross = [](const std::vector<double>& x) { return x[0] * x[1]; };
  CHECK(hermite_rank(cross, gamma, 4, samples) == 2);

  auto lognorm = [](const std::vector<double>& x) {
    return std::log(x[0] * x[0] + x[1] * x[1]);
  };
  CHECK(hermite_rank(lognorm, gamma, 4, samples) == 2);

  auto constant = [](const std::vector<double>&) { return 42.0; };
  CHECK(hermite_rank(constant, gamma, 3, samples) == 4);  // sentinel cap + 1

  auto broken = [](const std::vector<double>&) {
    return std::numeric_limits<double>::infinity();
  };
  CHECK_THROWS_AS(hermite_rank(broken, gamma, 3, 1u << 14), ArgumentError);
}

TEST_CASE("expansion diagnostics rows serialize to the documented schema") {
  FarimaSpec white;
  InnovationSpec cexp{InnovationKind::CenteredExponential};
  auto coeffs = coefficient_vectors(white, 64, 0, {5}, 64);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(coeffs.v_exact);
  std::vector<ExpansionDiagnostics> rows;
  for (int order : {3, 4}) {
    ExpansionDiagnostics row;
    row.n = 64;
    row.k = 5;
    row.order = order;
    row.tensor_max = cumulant_tensor(coeffs, cexp, order).max_abs();
    row.trace_vn = coeffs.v_exact.trace();
    row.lambda_min = es.eigenvalues().minCoeff();
    row.lambda_max = es.eigenvalues().maxCoeff();
    rows.push_back(row);
  }
  const std::string path = "diag_test.csv";
  write_expansion_diagnostics(path, rows);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header == "n,k,order,tensor_max,trace_Vn,lambda_min,lambda_max");
  std::string line;
  int count = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) ++count;
  }
  CHECK(count == 2);
}
