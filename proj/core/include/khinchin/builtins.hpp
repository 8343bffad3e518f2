#pragma once

#include <vector>

#include "khinchin/canonical.hpp"
#include "khinchin/gen_function.hpp"

namespace khinchin {
namespace builtins {

/// e^z (Poisson family).
GenFunction exponential();

/// 1/(1-z)^alpha; geometric family for alpha = 1, negative binomial
/// for integer alpha = N.
GenFunction geometric(double alpha = 1.0);

/// (1+z)^N (binomial family).
GenFunction binomial_poly(long N);

/// Polynomial with the given nonnegative coefficients (index = power).
GenFunction polynomial(std::vector<double> coeffs);
GenFunction polynomial_exact(std::vector<BigRational> coeffs);

/// Generating function of integer partitions, prod 1/(1-z^k).
GenFunction partition();

/// Exponential generating function of the Bell numbers, e^(e^z - 1).
GenFunction bell();

/// 1 + sum_k z^(2^k): radius 1, Hadamard gaps.
GenFunction hadamard_gap();

/// Entire gap series with support n_1=0, n_2=1, n_{k+1} = k n_k and
/// coefficients n^(-n/rho); order rho by Hadamard's formula.
GenFunction entire_gap_series(double rho);

/// 1 + ln(1/(1-z)).
GenFunction log_perturbed();

/// 1 + eps * sum_{n>=1} z^n / n^s  (finite mean at the radius when s > 2).
GenFunction polylog_perturbed(double eps = 1.0, double s = 4.0);

}  // namespace builtins
}  // namespace khinchin
