#include "longmem/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <memory>
#include <mutex>

#include "longmem/errors.hpp"

namespace longmem {

namespace {

void disable_gsl_abort() {
  static std::once_flag flag;
  std::call_once(flag, [] { gsl_set_error_handler_off(); });
}

double trampoline(double x, void* params) {
  return (*static_cast<const std::function<double(double)>*>(params))(x);
}

using Workspace =
    std::unique_ptr<gsl_integration_workspace, decltype(&gsl_integration_workspace_free)>;

Workspace make_workspace(std::size_t size) {
  return {gsl_integration_workspace_alloc(size), gsl_integration_workspace_free};
}

}  // namespace

double integrate_finite(const std::function<double(double)>& f, double a, double b,
                        double epsabs, double epsrel) {
  disable_gsl_abort();
  constexpr std::size_t kLimit = 4096;
  Workspace ws = make_workspace(kLimit);
  gsl_function gf{&trampoline, const_cast<std::function<double(double)>*>(&f)};
  double result = 0.0, abserr = 0.0;
  const int status =
      gsl_integration_qags(&gf, a, b, epsabs, epsrel, kLimit, ws.get(), &result, &abserr);
  // round-off reports still carry a usable estimate; anything else is fatal
  if (status != GSL_SUCCESS && status != GSL_EROUND)
    throw NumericalError("integrate_finite: gsl_integration_qags failed");
  return result;
}

double integrate_upper(const std::function<double(double)>& f, double a, double epsabs,
                       double epsrel) {
  disable_gsl_abort();
  constexpr std::size_t kLimit = 4096;
  Workspace ws = make_workspace(kLimit);
  gsl_function gf{&trampoline, const_cast<std::function<double(double)>*>(&f)};
  double result = 0.0, abserr = 0.0;
  const int status =
      gsl_integration_qagiu(&gf, a, epsabs, epsrel, kLimit, ws.get(), &result, &abserr);
  if (status != GSL_SUCCESS && status != GSL_EROUND)
    throw NumericalError("integrate_upper: gsl_integration_qagiu failed");
  return result;
}

}  // namespace longmem
