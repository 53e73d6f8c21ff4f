#pragma once
#include <stdexcept>
#include <string>

namespace longmem {

// Error taxonomy. Everything user-facing maps onto one of these; the CLI
// translates ArgumentError/ModelError -> exit 2, DegenerateDataError -> exit 3.
struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// log(0) or similar: input violates the continuity assumptions, abort the fit.
struct DegenerateDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace longmem
