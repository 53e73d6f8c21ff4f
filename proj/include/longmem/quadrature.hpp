#pragma once
#include <functional>

namespace longmem {

// Adaptive quadrature (Gauss-Kronrod with extrapolation, endpoint singularities
// allowed). Throws NumericalError if the integrator cannot reach the target.
double integrate_finite(const std::function<double(double)>& f, double a, double b,
                        double epsabs = 1e-10, double epsrel = 1e-10);

// integral over [a, infinity)
double integrate_upper(const std::function<double(double)>& f, double a,
                       double epsabs = 1e-10, double epsrel = 1e-10);

}  // namespace longmem
