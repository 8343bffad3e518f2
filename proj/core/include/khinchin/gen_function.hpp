#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "khinchin/exact.hpp"
#include "khinchin/jet.hpp"
#include "khinchin/signed_log.hpp"

namespace khinchin {

/// Radius of convergence. Inference on user expressions may fail, in
/// which case analytics require an explicit bound.
struct RadiusSpec {
  enum class Kind { finite, infinite, unknown };
  Kind kind = Kind::infinite;
  double r = 0.0;

  static RadiusSpec finite(double r);
  static RadiusSpec infinite() { return {Kind::infinite, 0.0}; }
  static RadiusSpec unknown() { return {Kind::unknown, 0.0}; }

  bool is_finite() const { return kind == Kind::finite; }
  bool is_infinite() const { return kind == Kind::infinite; }
  bool is_unknown() const { return kind == Kind::unknown; }

  /// R as a double; +inf when infinite. Throws when unknown.
  double upper() const;
};

/// Result of validating membership in class K: a_0 > 0, nonnegative
/// coefficients, at least two nonzero coefficients.
struct ClassKStatus {
  enum class Kind { verified, violated, unknown };
  Kind kind = Kind::unknown;
  long checked_up_to = 0;  // coefficients checked when verified
  long witness = -1;       // offending index when violated
  std::string detail;

  bool in_class() const { return kind != Kind::violated; }
  std::string str() const;
};

/// Whether sum n a_n R^n converges at a finite radius (decides if the
/// mean stays bounded as t approaches R).
enum class SumAtRadius { converges, diverges, unknown };

/// A zero of f at t*exp(i*theta), used by the zero-free-region check.
struct KnownZero {
  double t;
  double theta;
};

/// Evaluation outcome: either a value with the achieved (relative)
/// error bound, or a diagnostic.
template <typename T>
struct Eval {
  std::optional<T> value;
  double tail_bound = 0.0;
  std::string error;

  bool ok() const { return value.has_value(); }
  const T& operator*() const { return *value; }

  static Eval failure(std::string msg, double achieved = 0.0) {
    Eval e;
    e.error = std::move(msg);
    e.tail_bound = achieved;
    return e;
  }
  static Eval success(T v, double bound = 0.0) {
    Eval e;
    e.value = std::move(v);
    e.tail_bound = bound;
    return e;
  }
};

/// Per-t moment bundle of the associated distribution: everything the
/// family layer derives stats from. Factorial moments are kept instead
/// of raw moments so that all entries are sums of nonnegative terms.
struct FamilyCore {
  double log_t = 0.0;
  SignedLogValue log_f;     // value ln f(t), signed-log form
  SignedLogValue mean;      // E(X_t)
  SignedLogValue variance;  // Var(X_t)
  SignedLogValue fm2;       // E(X_t (X_t - 1))
  SignedLogValue fm3;       // E(X_t (X_t-1) (X_t-2))
  double tail_bound = 0.0;

  SignedLogValue ex2() const { return fm2 + mean; }
  SignedLogValue ex3() const {
    return fm3 + SignedLogValue::from_double(3.0) * fm2 + mean;
  }
};

/// A generating function in class K: coefficient channels, radius
/// metadata, and optional closed-form evaluation hooks. Instances are
/// immutable after construction and safe to share across threads.
struct GenFunction {
  std::string name;
  RadiusSpec radius;
  ClassKStatus class_k;
  SumAtRadius radius_sum = SumAtRadius::unknown;
  long poly_degree = -1;  // degree when f is a polynomial, else -1
  std::vector<KnownZero> known_zeros;
  bool sparse_support = false;
  long max_series_terms = 4000000;

  // Coefficient channels. coeff_log and support are required.
  std::function<SignedLogValue(long)> coeff_log;
  std::function<bool(long)> support;
  std::function<long(long)> next_support;          // first support index > n; -1 if none
  std::function<BigRational(long)> coeff_exact;    // optional exact channel
  bool exact_is_integer = false;

  // Optional closed-form hooks.
  std::function<Jet(double)> log_jet;                         // jet of ln f at t
  std::function<SignedLogValue(double)> variance_hook;        // stable sigma^2(t)
  std::function<SignedLogValue(int, double)> factorial_hook;  // E(X^(k falling))
  std::function<double(double, double)> log_modulus_hook;     // ln|f(t e^{i theta})|

  bool has_exact() const { return static_cast<bool>(coeff_exact); }
  bool has_jet() const { return static_cast<bool>(log_jet); }

  /// ln f(t) with a guaranteed tail bound (or a diagnostic).
  Eval<SignedLogValue> log_value(double t) const;

  /// S_p(t) = sum n^p a_n t^n, in log space. p >= 0 real.
  Eval<SignedLogValue> weighted_sum(double p, double log_t) const;

  /// sum n(n-1)...(n-k+1) a_n t^n.
  Eval<SignedLogValue> weighted_sum_falling(int k, double log_t) const;

  /// Moment bundle at t; prefers hooks, falls back to series.
  Eval<FamilyCore> core(double t) const;

  /// Same, parameterized by ln t (reaches t beyond double range for
  /// series-backed functions; hook-backed functions need linear t).
  Eval<FamilyCore> core_log(double log_t) const;

  /// ln |f(t e^{i theta})| for the zero-confirmation step.
  Eval<double> log_modulus(double t, double theta) const;

  long support_after(long n) const;
};

/// Validate class-K membership from the coefficient channel: a_0 > 0,
/// no negative coefficient among the first `up_to`, at least two
/// nonzero coefficients.
ClassKStatus validate_class_k(const GenFunction& f, long up_to);

}  // namespace khinchin
