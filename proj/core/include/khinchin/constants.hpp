#pragma once

namespace khinchin {

inline constexpr double kPi = 3.14159265358979323846;

/// Riemann zeta(s) for s > 1, by direct summation with an
/// Euler-Maclaurin tail; accurate to well below 1e-12.
double zeta(double s);

/// Beta(1+eta, 1-eta) = pi*eta / sin(pi*eta) for eta in [0,1).
double beta_symmetric(double eta);

/// ln Gamma and Gamma wrappers (std::lgamma / std::tgamma).
double log_gamma(double x);
double gamma_fn(double x);

}  // namespace khinchin
