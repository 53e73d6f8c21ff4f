#pragma once
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "longmem/farima.hpp"
#include "longmem/innovations.hpp"

namespace longmem {

// exponent tuple; coordinates past the active dimension stay zero
using MultiIndex = std::array<std::uint8_t, 4>;

int multi_index_order(const MultiIndex& nu);

// sparse polynomial in up to 4 variables
struct MultiPoly {
  int dim = 1;
  std::map<MultiIndex, double> terms;

  void add_term(const MultiIndex& nu, double coeff);
  MultiPoly plus(const MultiPoly& other) const;
  MultiPoly scaled(double c) const;
  MultiPoly times(const MultiPoly& other) const;
  MultiPoly derivative(int coord) const;
  double evaluate(const double* x) const;
};

// U_{n,j} triangular-array slice for one frequency tuple: the linear map from
// innovations to the 2u-vector S_n of normalized DFT real/imaginary parts.
struct CoefficientArray {
  std::size_t n = 0;
  int r = 0;
  int dim = 0;  // 2u
  std::vector<std::size_t> freqs;
  long j_min = 0;  // stored window is j_min..n
  std::vector<std::array<double, 4>> vectors;  // vectors[i] = U_{j_min + i}
  Eigen::MatrixXd v_exact;   // exact Cov(S_n): full-sum value via gamma identities
  double window_mass = 0.0;  // sum of ||U_j||^2 over the stored window
  double tail_mass = 0.0;    // trace(v_exact) - window_mass (mass outside window)
};

// window J >= n (0 means the default J = 4n); U_j is stored for -J <= j <= n.
// v_exact comes from the exact lag-grouped covariance of the weighted
// trigonometric sums, an independent path from summing U_j outer products.
CoefficientArray coefficient_vectors(const FarimaSpec& spec, std::size_t n, int r,
                                     const std::vector<std::size_t>& k,
                                     std::size_t window = 0);

// chi_nu = kappa_order * sum_j prod_c U_j[c]^{nu_c} over all |nu| = order
struct CumulantTensor {
  int order = 0;
  int dim = 0;
  std::map<MultiIndex, double> entries;

  double max_abs() const;
};
CumulantTensor cumulant_tensor(const CoefficientArray& coeffs, const InnovationSpec& innov,
                               int order);

// P~_1(z) = T_3(z), P~_2(z) = T_4(z) + T_3(z)^2/2, with
// T_r(z) = sum_{|nu|=r} chi_nu z^nu / nu!; returns {P~_1} or {P~_1, P~_2}
std::vector<MultiPoly> expansion_polynomials(const std::vector<CumulantTensor>& tensors,
                                             int max_r);

// density phi_V + sum_{r=1}^{s-3} P_r with P_r = [P~_r(-D)] phi_V, evaluated
// through the Gaussian-derivative recursion H_{nu+e_i} = (V^{-1}x)_i H_nu - d_i H_nu
struct EdgeworthExpansion {
  int s = 3;    // expansion order, 3..5 (s = 3 is the plain Gaussian)
  int dim = 1;  // 2u <= 4
  Eigen::MatrixXd v;
  std::vector<CumulantTensor> tensors;
  // derived
  Eigen::MatrixXd v_inv;
  Eigen::MatrixXd chol_lower;
  double norm_const = 0.0;  // (2 pi)^{-dim/2} det(V)^{-1/2}
  MultiPoly correction;     // sum_r sum_nu c_nu H_nu(x); density = phi (1 + correction)
};

EdgeworthExpansion make_expansion(const Eigen::MatrixXd& v,
                                  const std::vector<CumulantTensor>& tensors, int s);

double gaussian_density(const EdgeworthExpansion& exp, const double* x);
double edgeworth_density(const EdgeworthExpansion& exp, const double* x);

// integral of g against the expansion by randomized QMC importance sampling
// under phi_V (antithetic Sobol with 16 digital-shift replicates)
struct MomentEstimate {
  double value = 0.0;
  double se = 0.0;
};
MomentEstimate moment_expectation(const EdgeworthExpansion& exp,
                                  const std::function<double(const std::vector<double>&)>& g,
                                  std::size_t samples, std::uint64_t seed = 0x51ab5feedULL);

// p(k, j, n, beta): (jk)^{-1/2} plus, in the local regime, (j sqrt(k)/n)^beta
struct DecorrelationParams {
  enum class Regime { local, global };
  Regime regime = Regime::local;
  double beta = 1.0;
};
double decorrelation_bound(std::size_t k, std::size_t j, std::size_t n,
                           const DecorrelationParams& params);

// smallest total Hermite degree tau >= 1 with a projection of g - E[g]
// exceeding 1e-6 * ||g - E g||_Gamma, estimated by antithetic QMC; degree_cap+1
// if none
int hermite_rank(const std::function<double(const std::vector<double>&)>& g,
                 const Eigen::MatrixXd& gamma, int degree_cap,
                 std::size_t samples = 1u << 20, std::uint64_t seed = 0x7e51deadULL);

}  // namespace longmem
