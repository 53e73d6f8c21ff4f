#include "longmem/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "longmem/errors.hpp"
#include "longmem/rng.hpp"
#include "longmem/simulate.hpp"
#include "longmem/tapered_dft.hpp"

namespace longmem {

namespace {

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// run job(i) for i = 0..count-1 on `threads` workers; jobs must write only to
// their own slots.  The first non-degenerate exception is rethrown.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& job) {
  const int workers = std::min<int>(resolve_threads(threads),
                                    static_cast<int>(std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto body = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        job(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<std::size_t> default_grid(std::size_t n) {
  const std::size_t hi = n / 6;
  if (hi < 8)
    throw ArgumentError("run_mse_experiment: n too small for the default bandwidth grid");
  std::vector<std::size_t> grid;
  grid.reserve(hi - 7);
  for (std::size_t m = 8; m <= hi; ++m) grid.push_back(m);
  return grid;
}

}  // namespace

McResult run_mse_experiment(const ExperimentConfig& cfg) {
  validate(cfg.model);
  if (cfg.replications < 1)
    throw ArgumentError("run_mse_experiment: replications must be >= 1");
  if (cfg.taper_order < 0)
    throw ArgumentError("run_mse_experiment: taper order must be >= 0");
  if (cfg.truncation < 1)
    throw ArgumentError("run_mse_experiment: truncation must be >= 1");

  McResult res;
  res.grid = cfg.bandwidth_grid.empty() ? default_grid(cfg.n) : cfg.bandwidth_grid;
  const std::size_t nt = n_tilde_for(cfg.n, cfg.taper_order);
  std::size_t m_max = 0;
  for (std::size_t m : res.grid) {
    if (m < 2) throw ArgumentError("run_mse_experiment: bandwidth must be >= 2");
    if (static_cast<std::size_t>(cfg.taper_order + 1) * (m + 1) >= nt)
      throw ArgumentError(
          "run_mse_experiment: bandwidth too large, need (r+1)(m+1) < n_tilde");
    m_max = std::max(m_max, m);
  }

  const std::size_t reps = cfg.replications;
  const std::size_t g = res.grid.size();
  constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::vector<double>> d_hat(reps, std::vector<double>(g, kNan));

  parallel_for(reps, cfg.threads, [&](std::size_t rep) {
    const TimeSeries x = simulate_truncated_ma(
        cfg.model, cfg.innovations, cfg.n, cfg.truncation,
        SeedSpec{cfg.master_seed, static_cast<std::uint64_t>(rep)});
    const TaperedDft dft = tapered_dft_all(x, cfg.taper_order);
    try {
      const std::vector<double> scan = scan_bandwidths(dft, m_max);
      for (std::size_t gi = 0; gi < g; ++gi) d_hat[rep][gi] = scan[res.grid[gi]];
    } catch (const DegenerateDataError&) {
      // row stays NaN: the replication is excluded and counted below
    }
  });

  res.bias.assign(g, 0.0);
  res.mse.assign(g, 0.0);
  res.se_bias.assign(g, 0.0);
  res.se_mse.assign(g, 0.0);
  std::size_t effective = 0;
  for (std::size_t rep = 0; rep < reps; ++rep)
    if (std::isfinite(d_hat[rep][0])) ++effective;
  res.excluded = reps - effective;
  if (effective == 0)
    throw DegenerateDataError("run_mse_experiment: every replication was excluded");

  const double d_true = cfg.model.d;
  for (std::size_t gi = 0; gi < g; ++gi) {
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t rep = 0; rep < reps; ++rep) {
      const double v = d_hat[rep][gi];
      if (!std::isfinite(v)) continue;
      const double e = v - d_true;
      sum += e;
      sum_sq += e * e;
    }
    const double nr = static_cast<double>(effective);
    const double mean_err = sum / nr;
    const double mean_sq = sum_sq / nr;
    res.bias[gi] = mean_err;
    res.mse[gi] = mean_sq;
    if (effective > 1) {
      double var_err = 0.0, var_sq = 0.0;
      for (std::size_t rep = 0; rep < reps; ++rep) {
        const double v = d_hat[rep][gi];
        if (!std::isfinite(v)) continue;
        const double e = v - d_true;
        var_err += (e - mean_err) * (e - mean_err);
        var_sq += (e * e - mean_sq) * (e * e - mean_sq);
      }
      res.se_bias[gi] = std::sqrt(var_err / (nr - 1.0) / nr);
      res.se_mse[gi] = std::sqrt(var_sq / (nr - 1.0) / nr);
    }
  }
  res.optimal_m = find_optimal_bandwidth(res);
  if (cfg.keep_replicates) res.d_hat = std::move(d_hat);
  return res;
}

std::size_t find_optimal_bandwidth(const McResult& result) {
  if (result.grid.empty() || result.mse.size() != result.grid.size())
    throw ArgumentError("find_optimal_bandwidth: empty or inconsistent grid");
  std::size_t best_m = result.grid[0];
  double best = result.mse[0];
  for (std::size_t gi = 1; gi < result.grid.size(); ++gi) {
    const double v = result.mse[gi];
    const std::size_t m = result.grid[gi];
    if (v < best || (v == best && m < best_m)) {
      best = v;
      best_m = m;
    }
  }
  return best_m;
}

std::vector<DecorrelationRow> verify_decorrelation(
    const FarimaSpec& spec, int r, const std::vector<std::size_t>& n_list,
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
    const DecorrelationParams& params) {
  validate(spec);
  std::vector<DecorrelationRow> rows;
  for (const std::size_t n : n_list) {
    std::vector<std::pair<std::size_t, std::size_t>> use = pairs;
    if (use.empty()) {
      const std::size_t top = n / 8;
      for (std::size_t k = 1; k < top; ++k)
        for (std::size_t j = k + 1; j <= top; ++j) use.emplace_back(k, j);
      if (use.empty())
        throw ArgumentError("verify_decorrelation: n too small for the default pair set");
    }
    const std::size_t first = rows.size();
    double fitted_c = 0.0;
    for (const auto& [k, j] : use) {
      if (k < 1 || j < k) throw ArgumentError("verify_decorrelation: pairs need 1 <= k <= j");
      const DftCovariance cov = exact_dft_cov(spec, n, r, k, j);
      DecorrelationRow row;
      row.n = n;
      row.k = k;
      row.j = j;
      row.dev = std::abs(cov.plain_pair) +
                std::abs(cov.conj_pair - sigma_r(r, static_cast<int>(k) - static_cast<int>(j)));
      row.bound = decorrelation_bound(k, j, n, params);  // p; rescaled below
      fitted_c = std::max(fitted_c, row.dev / row.bound);
      rows.push_back(row);
    }
    for (std::size_t i = first; i < rows.size(); ++i) {
      rows[i].fitted_c = fitted_c;
      rows[i].bound *= fitted_c;
    }
  }
  return rows;
}

EdgeworthFitResult edgeworth_fit_experiment(const InnovationSpec& innov, std::size_t n,
                                            std::size_t replications, std::size_t k, int s,
                                            std::uint64_t master_seed, int threads) {
  if (replications < 1)
    throw ArgumentError("edgeworth_fit_experiment: replications must be >= 1");
  if (s < 3 || s > 5) throw ArgumentError("edgeworth_fit_experiment: s must be in 3..5");

  const FarimaSpec white;  // the sampling model is i.i.d. innovations
  const CoefficientArray coeffs = coefficient_vectors(white, n, 0, {k}, n);
  std::vector<CumulantTensor> tensors;
  for (int order = 3; order < s; ++order)
    tensors.push_back(cumulant_tensor(coeffs, innov, order));
  const EdgeworthExpansion expansion = make_expansion(coeffs.v_exact, tensors, s);

  // S_n(k) = sum_{t=1}^n Z_t U_t ; innovations before time 1 do not enter
  // because the white-noise filter has a single tap.
  std::vector<std::array<double, 2>> u(n + 1);
  for (std::size_t t = 1; t <= n; ++t) {
    const auto& v = coeffs.vectors[static_cast<std::size_t>(
        static_cast<long>(t) - coeffs.j_min)];
    u[t] = {v[0], v[1]};
  }

  constexpr int kBins = 64;
  constexpr double kLo = -4.0, kHi = 4.0;
  constexpr double kWidth = (kHi - kLo) / kBins;
  const int workers = resolve_threads(threads);
  std::vector<std::vector<std::uint64_t>> counts(
      static_cast<std::size_t>(workers),
      std::vector<std::uint64_t>(kBins * kBins, 0));

  {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    const auto body = [&](int worker) {
      auto& local = counts[static_cast<std::size_t>(worker)];
      try {
        for (;;) {
          const std::size_t rep = next.fetch_add(1);
          if (rep >= replications) return;
          Rng rng(SeedSpec{master_seed, static_cast<std::uint64_t>(rep)});
          double s0 = 0.0, s1 = 0.0;
          for (std::size_t t = 1; t <= n; ++t) {
            const double z = innov.sample(rng);
            s0 += z * u[t][0];
            s1 += z * u[t][1];
          }
          const double bx = std::floor((s0 - kLo) / kWidth);
          const double by = std::floor((s1 - kLo) / kWidth);
          if (bx < 0 || bx >= kBins || by < 0 || by >= kBins) continue;
          ++local[static_cast<std::size_t>(bx) * kBins + static_cast<std::size_t>(by)];
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    };
    if (workers <= 1) {
      body(0);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(workers));
      for (int w = 0; w < workers; ++w) pool.emplace_back(body, w);
      for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
  }
  std::vector<std::uint64_t> total(kBins * kBins, 0);
  for (const auto& local : counts)
    for (std::size_t b = 0; b < total.size(); ++b) total[b] += local[b];

  // cell mass of each density by 2x2 tensor Gauss-Legendre
  constexpr double kNode = 0.5773502691896257;  // 1/sqrt(3)
  EdgeworthFitResult out;
  out.n = n;
  out.reps = replications;
  for (int bx = 0; bx < kBins; ++bx)
    for (int by = 0; by < kBins; ++by) {
      const double cx = kLo + (bx + 0.5) * kWidth;
      const double cy = kLo + (by + 0.5) * kWidth;
      double mass_g = 0.0, mass_e = 0.0;
      for (int ix = -1; ix <= 1; ix += 2)
        for (int iy = -1; iy <= 1; iy += 2) {
          const double x[2] = {cx + ix * kNode * kWidth / 2.0,
                               cy + iy * kNode * kWidth / 2.0};
          mass_g += gaussian_density(expansion, x);
          mass_e += edgeworth_density(expansion, x);
        }
      const double cell = (kWidth / 2.0) * (kWidth / 2.0);
      mass_g *= cell;
      mass_e *= cell;
      const double p_hat =
          static_cast<double>(total[static_cast<std::size_t>(bx) * kBins +
                                    static_cast<std::size_t>(by)]) /
          static_cast<double>(replications);
      out.l1_gauss += std::abs(p_hat - mass_g);
      out.l1_edgeworth += std::abs(p_hat - mass_e);
    }
  return out;
}

}  // namespace longmem
