#pragma once
#include <vector>

#include "longmem/farima.hpp"
#include "longmem/innovations.hpp"
#include "longmem/rng.hpp"

namespace longmem {

// X_1..X_n
using TimeSeries = std::vector<double>;

// X_t = sum_{j=0}^{T-1} psi_j Z_{t-j}, t = 1..n, from T + n innovation draws
// (burn-in of length T so X_1 already sees a full filter window).
TimeSeries simulate_truncated_ma(const FarimaSpec& spec, const InnovationSpec& innov,
                                 std::size_t n, std::size_t truncation, SeedSpec seed);

// Filtering core, exposed so tests can inject a hand-built innovation array.
// z has length truncation + n; z[i] is the innovation at time i + 1 - truncation,
// so z.back() drives X_n and z[truncation] drives X_1's leading tap.
TimeSeries filter_innovations(const FarimaSpec& spec, const std::vector<double>& z,
                              std::size_t n, std::size_t truncation);

// Exact draw from the n-dimensional Gaussian law with covariance gamma(|i-j|),
// by the sequential innovations form of the Durbin-Levinson recursion. O(n^2);
// n is capped at 2^16.
TimeSeries simulate_gaussian_exact(const FarimaSpec& spec, std::size_t n, SeedSpec seed);

}  // namespace longmem
