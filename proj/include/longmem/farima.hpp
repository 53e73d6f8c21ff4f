#pragma once
#include <complex>
#include <vector>

namespace longmem {

// Linear-process model: X_t = sum_j psi_j Z_{t-j} with transfer function
// psi(lambda) = (1 - e^{-i lambda})^{-d} theta(e^{-i lambda}) / phi(e^{-i lambda}).
// AR polynomial convention: phi(z) = 1 - sum_i ar[i-1] z^i (so ar = {0.3} means
// X_t - 0.3 X_{t-1} = ... on the AR side); MA: theta(z) = 1 + sum_i ma[i-1] z^i.
struct FarimaSpec {
  std::vector<double> ar;  // phi_1..phi_p
  double d = 0.0;          // memory parameter, |d| < 1/2
  std::vector<double> ma;  // theta_1..theta_q
};

// throws ModelError if |d| >= 1/2 or the AR polynomial has a root with
// modulus <= 1 + 1e-8 (checked via companion-matrix eigenvalues)
void validate(const FarimaSpec& spec);

// impulse-response coefficients psi_0..psi_{truncation-1}.
// Fractional part by the ratio recursion psi_t = psi_{t-1} (t-1+d)/t (never a
// direct Gamma evaluation), then convolved with the ARMA expansion.
std::vector<double> ma_coefficients(const FarimaSpec& spec, std::size_t truncation);

std::complex<double> transfer(const FarimaSpec& spec, double lambda);

// f(lambda) = (2pi)^{-1} |1-e^{-i lambda}|^{-2d} |theta/phi|^2; unit innovation
// variance. Throws SingularityError at lambda == 0 when d > 0.
double spectral_density(const FarimaSpec& spec, double lambda);

// short-memory factor f*(lambda) = |1-e^{-i lambda}|^{2d} f(lambda); finite and
// positive at lambda = 0
double short_memory_factor(const FarimaSpec& spec, double lambda);

// gamma(0..max_lag). Pure fractional case (p = q = 0) uses the closed form via
// the stable ratio recursion gamma(h) = gamma(h-1) (h-1+d)/(h-d); ARMA parts go
// through the impulse-response convolution (FFT autocorrelation) with the given
// truncation.
std::vector<double> autocovariance(const FarimaSpec& spec, std::size_t max_lag,
                                   std::size_t conv_truncation = 1'000'000);

// Durbin-Levinson pass over an autocovariance sequence: partial correlations
// phi_{h,h} and one-step prediction variances v_0..v_{n-1}
struct DlCoefficients {
  std::vector<double> partial;  // phi_{h,h}, h = 1..n-1
  std::vector<double> pred_var; // v_0 = gamma(0), then the recursion
};
DlCoefficients durbin_levinson(const std::vector<double>& gamma);

}  // namespace longmem
