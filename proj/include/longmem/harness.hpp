#pragma once
#include <cstdint>
#include <utility>
#include <vector>

#include "longmem/edgeworth.hpp"
#include "longmem/farima.hpp"
#include "longmem/gph.hpp"
#include "longmem/innovations.hpp"

namespace longmem {

// One Monte Carlo study: `replications` independent series of length n from
// `model` + `innovations`, each estimated over the whole bandwidth grid.
struct ExperimentConfig {
  FarimaSpec model;
  InnovationSpec innovations;
  std::size_t n = 0;
  std::size_t replications = 0;
  std::vector<std::size_t> bandwidth_grid;  // empty -> every m in [8, n/6]
  int taper_order = 1;
  std::uint64_t master_seed = 0;
  std::size_t truncation = 5000;  // MA(inf) filter window for simulation
  int threads = 0;                // 0 = hardware default
  bool keep_replicates = false;   // retain the per-replication d_hat matrix
};

struct McResult {
  std::vector<std::size_t> grid;
  std::vector<double> bias;     // mean(d_hat) - d, per grid entry
  std::vector<double> mse;      // mean((d_hat - d)^2)
  std::vector<double> se_bias;  // sd(d_hat) / sqrt(reps)
  std::vector<double> se_mse;   // sd((d_hat - d)^2) / sqrt(reps)
  std::size_t optimal_m = 0;
  std::size_t excluded = 0;     // replications dropped on degenerate data
  // d_hat[rep][grid index]; populated only when keep_replicates
  std::vector<std::vector<double>> d_hat;
};

// Replications are distributed over a worker pool, but every replication owns
// a derived seed and a dedicated storage row, and aggregation runs afterwards
// in replication order — outputs are byte-identical at any thread count.
McResult run_mse_experiment(const ExperimentConfig& cfg);

// argmin of MSE over the grid; ties broken toward smaller m
std::size_t find_optimal_bandwidth(const McResult& result);

// Exact finite-n DFT decorrelation audit: dev = |E(w_k w_j)| +
// |E(w_k conj(w_j)) - sigma_r(k-j)| tabulated against fitted_C * p(k,j,n,beta),
// with fitted_C = max(dev/p) taken per n.
struct DecorrelationRow {
  std::size_t n = 0, k = 0, j = 0;
  double dev = 0.0;
  double bound = 0.0;     // fitted_c * p(k, j, n)
  double fitted_c = 0.0;  // shared by all rows of the same n
};
std::vector<DecorrelationRow> verify_decorrelation(
    const FarimaSpec& spec, int r, const std::vector<std::size_t>& n_list,
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs,  // empty -> all 1<=k<j<=n/8
    const DecorrelationParams& params);

// White-noise sampling-distribution check at one frequency: the empirical 2-D
// histogram of S_n(k) = (Re w_k, Im w_k) over [-4,4]^2 with 64x64 bins is
// compared in L1 against the limiting Gaussian and against the order-s
// expansion built from the same coefficient vectors.  s = 4 adds the
// third-cumulant polynomial (identically zero when no triple of the tapered
// frequencies resonates mod n); s = 5 adds the fourth-cumulant term.
struct EdgeworthFitResult {
  std::size_t n = 0;
  std::size_t reps = 0;
  double l1_gauss = 0.0;
  double l1_edgeworth = 0.0;
};
EdgeworthFitResult edgeworth_fit_experiment(const InnovationSpec& innov, std::size_t n,
                                            std::size_t replications, std::size_t k = 5,
                                            int s = 5,
                                            std::uint64_t master_seed = 20250819ull,
                                            int threads = 0);

}  // namespace longmem
