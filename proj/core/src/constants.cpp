#include "khinchin/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace khinchin {

double zeta(double s) {
  if (s <= 1.0) throw std::domain_error("zeta: requires s > 1");
  const int N = 64;
  double sum = 0.0;
  for (int n = 1; n < N; ++n) sum += std::pow(n, -s);
  // Tail from N on: integral + EM corrections.
  double Np = std::pow(static_cast<double>(N), -s);
  sum += N * Np / (s - 1.0);          // integral_N^inf x^-s dx
  sum += 0.5 * Np;                    // half of f(N)
  sum += s * Np / (12.0 * N);         // -B2/2! f'(N)
  sum -= s * (s + 1) * (s + 2) * Np / (720.0 * N * N * N);
  return sum;
}

double beta_symmetric(double eta) {
  if (eta < 0.0 || eta >= 1.0)
    throw std::domain_error("beta_symmetric: eta must lie in [0,1)");
  if (eta == 0.0) return 1.0;
  return kPi * eta / std::sin(kPi * eta);
}

double log_gamma(double x) { return std::lgamma(x); }
double gamma_fn(double x) { return std::tgamma(x); }

}  // namespace khinchin
