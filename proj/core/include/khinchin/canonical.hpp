#pragma once

#include <string>
#include <vector>

#include "khinchin/gen_function.hpp"

namespace khinchin {

/// Zeros of a genus-0 canonical product prod_k (1 + z/b_k)^{mult(k)}.
/// The b_k come from a rule; multiplicities default to 1.
struct CanonicalProductSpec {
  enum class Rule { geometric, power, double_exp, list };
  enum class Mult { one, linear };  // mult(k) = 1 or mult(k) = k

  Rule rule = Rule::geometric;
  double c = 1.0;        // geometric: b_k = c * ratio^k
  double ratio = 2.0;
  double exponent = 2.0;  // power: b_k = k^exponent
  std::vector<double> zeros;  // list rule, strictly increasing
  Mult mult = Mult::one;

  double b(long k) const;        // k >= 1
  long multiplicity(long k) const { return mult == Mult::one ? 1 : k; }

  /// N(t): number of zeros with |z| <= t, counted with multiplicity.
  long zero_count(double t) const;

  /// Whether b_{k+1} >= 2 b_k over the first `upto` indices.
  bool check_doubling(long upto = 64) const;

  struct ConvergenceReport {
    bool convergent = false;
    bool verified = false;  // false: heuristic was inconclusive
    std::string note;
  };
  /// Does sum mult(k)/b_k converge? Analytic per rule where possible,
  /// ratio-test heuristic otherwise.
  ConvergenceReport convergence() const;

  std::string describe() const;

  static CanonicalProductSpec geometric_rule(double c, double ratio);
  static CanonicalProductSpec power_rule(double exponent);
  static CanonicalProductSpec double_exp_rule();
  static CanonicalProductSpec list_rule(std::vector<double> zeros);
};

/// ln f(t), mean, variance and N(t) of the canonical product, each by
/// direct partial sums with an explicit tail bound.
struct CanonicalValues {
  double log_f = 0.0;
  double mean = 0.0;
  double variance = 0.0;
  long zero_count = 0;
  double tail_bound = 0.0;  // relative bound on the three sums
};
Eval<CanonicalValues> canonical_eval(const CanonicalProductSpec& spec, double t);

/// Jet of ln f at t (value and three derivatives), same tail handling.
Eval<Jet> canonical_log_jet(const CanonicalProductSpec& spec, double t);

/// Package the product as a GenFunction (hooks, coefficient channel
/// from the power-sum exponential, known zeros).
GenFunction make_canonical(const CanonicalProductSpec& spec);

}  // namespace khinchin
