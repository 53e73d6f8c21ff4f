#pragma once
#include <string>
#include <vector>

#include "longmem/rng.hpp"

namespace longmem {

// Innovation laws, all standardized to mean 0, variance 1:
//   Gaussian            standard normal
//   Laplace             scale 1/sqrt(2)
//   ShiftedPareto       tail index 7, recentered and divided by sqrt(7/180)
//   CenteredExponential Exp(1) - 1
enum class InnovationKind { Gaussian, Laplace, ShiftedPareto, CenteredExponential };

InnovationKind innovation_kind_from_string(const std::string& name);
const char* to_string(InnovationKind kind);

struct InnovationSpec {
  InnovationKind kind = InnovationKind::Gaussian;

  // kappa_order for order in 2..6, exact closed forms (kappa_2 = 1 for all)
  double cumulant(int order) const;

  // one standardized draw
  double sample(Rng& rng) const;
};

// count i.i.d. draws, deterministic given seed
std::vector<double> sample_innovations(const InnovationSpec& spec, std::size_t count,
                                       SeedSpec seed);

}  // namespace longmem
