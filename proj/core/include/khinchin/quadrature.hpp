#pragma once

#include <functional>

namespace khinchin {

/// Adaptive Simpson on [a, b] to absolute tolerance tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, int max_depth = 40);

/// Integral over [a, infinity) of a smoothly decaying g, via the
/// substitution x = a * e^s; the upper limit grows until the integrand
/// is negligible relative to the accumulated value.
double integrate_tail_log(const std::function<double(double)>& g, double a,
                          double rel_tol);

}  // namespace khinchin
