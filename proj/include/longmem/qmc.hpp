#pragma once
#include <cstdint>
#include <vector>

namespace longmem {

// Gray-code Sobol sequence in [0,1)^dim, dim <= 6, 32-bit resolution.
// An optional digital shift (XOR mask per coordinate) randomizes the net while
// preserving its equidistribution; shift = {} means the plain sequence.
class SobolSequence {
 public:
  explicit SobolSequence(int dim, std::vector<std::uint32_t> shift = {});

  // next point; call count must stay below 2^32
  void next(double* point);
  int dim() const { return dim_; }

 private:
  int dim_;
  std::uint64_t index_ = 0;
  std::vector<std::uint32_t> state_;                // current Gray-code word per dim
  std::vector<std::uint32_t> shift_;                // digital shift per dim
  std::vector<std::vector<std::uint32_t>> dirs_;    // direction numbers [dim][bit]
};

// Phi^{-1}(p) for p in (0,1): rational initial guess polished by one Halley
// step against erfc, |Phi(Phi^{-1}(p)) - p| < 1e-12 over the full range
double inverse_normal_cdf(double p);

}  // namespace longmem
