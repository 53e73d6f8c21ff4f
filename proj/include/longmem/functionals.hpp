#pragma once
#include <functional>
#include <string>
#include <vector>

#include "longmem/farima.hpp"
#include "longmem/simulate.hpp"
#include "longmem/tapered_dft.hpp"

namespace longmem {

// (G, H) with G(x) = integral_0^inf H(x v) e^{-v} dv: H applied to raw
// periodogram ordinates estimates what G applied to the spectrum integrates to.
struct LaplacePair {
  std::function<double(double)> G;
  std::function<double(double)> H;
  std::string name;
};

LaplacePair identity_pair();  // G(x) = x,     H(y) = y
LaplacePair log_pair();       // G(x) = log x, H(y) = log y + gamma_Euler

// verifies the transform identity at x in {0.5, 1, 2} by adaptive quadrature
// (1e-6 relative) before accepting the pair
LaplacePair make_checked_pair(std::function<double(double)> G,
                              std::function<double(double)> H, std::string name);

// sum_k beta_k phi(I_k / f_k); arrays must have equal length, f_k > 0
double weighted_functional(const std::vector<double>& periodogram,
                           const std::vector<double>& spectrum,
                           const std::vector<double>& beta,
                           const std::function<double(double)>& phi);

// (pi/n_tilde) sum_{k=1}^{n_tilde} w(lambda_k) H(I_{0,n,k}) on the untapered
// periodogram
double plugin_lambda(const TimeSeries& x, const LaplacePair& pair,
                     const std::function<double(double)>& w);

// deterministic target (pi/n_tilde) sum_k w(lambda_k) G(f(lambda_k))
double reference_lambda(const FarimaSpec& spec, const LaplacePair& pair,
                        const std::function<double(double)>& w, std::size_t n);

}  // namespace longmem
