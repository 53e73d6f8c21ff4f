#include "longmem/qmc.hpp"

#include <bit>
#include <cmath>

#include "longmem/errors.hpp"

namespace longmem {

namespace {

constexpr int kBits = 32;

// primitive polynomial degree, encoded coefficients, and initial m values for
// coordinates 2..6 (coordinate 1 is the van der Corput radix-2 sequence)
struct SobolParams {
  int s;
  std::uint32_t a;
  std::uint32_t m[4];
};
constexpr SobolParams kParams[5] = {
    {1, 0, {1, 0, 0, 0}},
    {2, 1, {1, 3, 0, 0}},
    {3, 1, {1, 3, 1, 0}},
    {3, 2, {1, 1, 1, 0}},
    {4, 1, {1, 1, 3, 3}},
};

std::vector<std::uint32_t> direction_numbers(int coord) {
  std::vector<std::uint32_t> v(kBits);
  if (coord == 0) {
    for (int b = 0; b < kBits; ++b) v[b] = 1u << (kBits - 1 - b);
    return v;
  }
  const SobolParams& p = kParams[coord - 1];
  std::vector<std::uint32_t> m(kBits);
  for (int i = 0; i < p.s; ++i) m[i] = p.m[i];
  for (int i = p.s; i < kBits; ++i) {
    std::uint32_t val = m[i - p.s] ^ (m[i - p.s] << p.s);
    for (int k = 1; k < p.s; ++k)
      if ((p.a >> (p.s - 1 - k)) & 1u) val ^= m[i - k] << k;
    m[i] = val;
  }
  for (int b = 0; b < kBits; ++b) v[b] = m[b] << (kBits - 1 - b);
  return v;
}

}  // namespace

SobolSequence::SobolSequence(int dim, std::vector<std::uint32_t> shift)
    : dim_(dim), state_(static_cast<std::size_t>(dim), 0u), shift_(std::move(shift)) {
  if (dim < 1 || dim > 6) throw ArgumentError("SobolSequence: dim must be in 1..6");
  if (shift_.empty()) shift_.assign(static_cast<std::size_t>(dim), 0u);
  if (shift_.size() != static_cast<std::size_t>(dim))
    throw ArgumentError("SobolSequence: shift size mismatch");
  dirs_.reserve(static_cast<std::size_t>(dim));
  for (int c = 0; c < dim; ++c) dirs_.push_back(direction_numbers(c));
}

void SobolSequence::next(double* point) {
  constexpr double scale = 0x1.0p-32;
  for (int c = 0; c < dim_; ++c)
    point[c] = static_cast<double>(state_[c] ^ shift_[c]) * scale;
  // Gray-code update: flip the direction number of the lowest zero bit
  const int bit = std::countr_one(index_);
  if (bit < kBits)
    for (int c = 0; c < dim_; ++c) state_[c] ^= dirs_[c][bit];
  ++index_;
}

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ArgumentError("inverse_normal_cdf: p must be in (0,1)");
  // rational approximation in three regimes
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5, t = q * q;
    x = (((((a[0] * t + a[1]) * t + a[2]) * t + a[3]) * t + a[4]) * t + a[5]) * q /
        (((((b[0] * t + b[1]) * t + b[2]) * t + b[3]) * t + b[4]) * t + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // one Halley step: e = Phi(x) - p, Phi' = phi(x)
  constexpr double inv_sqrt2 = 0.7071067811865476;
  constexpr double sqrt_2pi = 2.5066282746310002;
  const double e = 0.5 * std::erfc(-x * inv_sqrt2) - p;
  const double u = e * sqrt_2pi * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

}  // namespace longmem
