#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace khinchin {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

namespace exact {

/// Number of partitions of n, by the pentagonal-number recurrence.
/// Cached; arbitrary precision.
BigInt partition_count(long n);

/// n-th Bell number via the Bell triangle. Cached.
BigInt bell_number(long n);

/// Binomial coefficient C(n, k); zero outside 0 <= k <= n.
BigInt binomial(long n, long k);

BigInt factorial(long n);

/// Coefficient of z^n in (1+z)^N.
BigInt binomial_coeff(long N, long n);

/// Coefficient of z^n in 1/(1-z)^N, i.e. C(n+N-1, n).
BigInt negbinomial_coeff(long N, long n);

/// Coefficient of z^n in e^z, i.e. 1/n!.
BigRational exponential_coeff(long n);

}  // namespace exact

/// Exact triangle of Stirling numbers of the second kind, S(k, j) for
/// 0 <= j <= k <= max_k. S(k,j) = j*S(k-1,j) + S(k-1,j-1).
class StirlingTable {
 public:
  explicit StirlingTable(int max_k);

  int max_k() const { return static_cast<int>(rows_.size()) - 1; }
  const BigInt& operator()(int k, int j) const;

  /// Shared table, grown on demand.
  static const StirlingTable& shared(int at_least_k);

 private:
  std::vector<std::vector<BigInt>> rows_;
};

}  // namespace khinchin
