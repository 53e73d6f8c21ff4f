#include "longmem/innovations.hpp"

#include <cmath>

#include "longmem/errors.hpp"

namespace longmem {

namespace {

// Cumulants of the standardized Pareto law, exact closed forms from the raw
// moments m_k = 7/(7-k) of the tail-index-7 variable on [1, inf).
constexpr double kParetoK3 = 3.3806170189140663;   // (2/3)*sqrt(180/7)
constexpr double kParetoK4 = 174.0 / 7.0;
constexpr double kParetoK5 = 376.69732496471025;   // (3640/49)*sqrt(180/7)
constexpr double kParetoK6 = 4826640.0 / 343.0;

constexpr double kParetoScale = 0.19720265943665387;  // sqrt(7/180)
constexpr double kParetoShift = 7.0 / 6.0;

}  // namespace

InnovationKind innovation_kind_from_string(const std::string& name) {
  if (name == "gaussian") return InnovationKind::Gaussian;
  if (name == "laplace") return InnovationKind::Laplace;
  if (name == "pareto") return InnovationKind::ShiftedPareto;
  if (name == "cexp") return InnovationKind::CenteredExponential;
  throw ArgumentError("unknown innovation kind: " + name +
                      " (expected gaussian|laplace|pareto|cexp)");
}

const char* to_string(InnovationKind kind) {
  switch (kind) {
    case InnovationKind::Gaussian: return "gaussian";
    case InnovationKind::Laplace: return "laplace";
    case InnovationKind::ShiftedPareto: return "pareto";
    case InnovationKind::CenteredExponential: return "cexp";
  }
  return "?";
}

double InnovationSpec::cumulant(int order) const {
  if (order < 2 || order > 6) throw ArgumentError("cumulant: order must be in 2..6");
  if (order == 2) return 1.0;
  switch (kind) {
    case InnovationKind::Gaussian:
      return 0.0;
    case InnovationKind::Laplace: {
      // kappa_{2m} = (2m)! b^{2m} / m with b^2 = 1/2; odd cumulants vanish
      switch (order) {
        case 3: return 0.0;
        case 4: return 3.0;
        case 5: return 0.0;
        case 6: return 30.0;
      }
      break;
    }
    case InnovationKind::ShiftedPareto:
      switch (order) {
        case 3: return kParetoK3;
        case 4: return kParetoK4;
        case 5: return kParetoK5;
        case 6: return kParetoK6;
      }
      break;
    case InnovationKind::CenteredExponential:
      // kappa_r = (r-1)! for the unit exponential; centering only moves kappa_1
      switch (order) {
        case 3: return 2.0;
        case 4: return 6.0;
        case 5: return 24.0;
        case 6: return 120.0;
      }
      break;
  }
  return 0.0;
}

double InnovationSpec::sample(Rng& rng) const {
  switch (kind) {
    case InnovationKind::Gaussian:
      return rng.normal();
    case InnovationKind::Laplace: {
      // difference of two unit exponentials is Laplace(0, 1); rescale to var 1
      const double e1 = -std::log(1.0 - rng.uniform());
      const double e2 = -std::log(1.0 - rng.uniform());
      return (e1 - e2) * 0.7071067811865476;
    }
    case InnovationKind::ShiftedPareto: {
      // inverse CDF of the tail-index-7 law, recentered (mean 7/6) and scaled
      const double y = std::pow(1.0 - rng.uniform(), -1.0 / 7.0);
      return (y - kParetoShift) / kParetoScale;
    }
    case InnovationKind::CenteredExponential:
      return -std::log(1.0 - rng.uniform()) - 1.0;
  }
  return 0.0;
}

std::vector<double> sample_innovations(const InnovationSpec& spec, std::size_t count,
                                       SeedSpec seed) {
  if (count == 0) throw ArgumentError("sample_innovations: count must be >= 1");
  Rng rng(seed);
  std::vector<double> out(count);
  for (double& v : out) v = spec.sample(rng);
  return out;
}

}  // namespace longmem
