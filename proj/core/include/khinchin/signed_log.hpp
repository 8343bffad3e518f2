#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace khinchin {

/// A real number stored as a sign and the natural log of its magnitude.
/// Holds quantities like a_n * t^n or f(t) whose magnitudes exceed the
/// range of double. Invariant: sign == 0 iff lg == -infinity.
struct SignedLogValue {
  int sign = 0;
  double lg = -std::numeric_limits<double>::infinity();

  static SignedLogValue zero() { return {}; }
  static SignedLogValue one() { return {+1, 0.0}; }

  static SignedLogValue from_log(double lg, int sign = +1) {
    if (std::isinf(lg) && lg < 0) return zero();
    return {sign >= 0 ? +1 : -1, lg};
  }

  static SignedLogValue from_double(double x) {
    if (x == 0.0 || std::isnan(x)) return zero();
    return {x > 0 ? +1 : -1, std::log(std::abs(x))};
  }

  bool is_zero() const { return sign == 0; }
  bool positive() const { return sign > 0; }

  /// Linear value; overflows to +-inf and underflows to 0 silently.
  double to_double() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(lg);
  }

  SignedLogValue operator-() const { return {-sign, lg}; }

  std::string str() const;
};

inline SignedLogValue operator*(const SignedLogValue& a, const SignedLogValue& b) {
  if (a.sign == 0 || b.sign == 0) return SignedLogValue::zero();
  return {a.sign * b.sign, a.lg + b.lg};
}

inline SignedLogValue operator/(const SignedLogValue& a, const SignedLogValue& b) {
  if (a.sign == 0) return SignedLogValue::zero();
  return {a.sign * b.sign, a.lg - b.lg};
}

inline SignedLogValue operator+(const SignedLogValue& a, const SignedLogValue& b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  if (a.sign == b.sign) {
    double hi = std::max(a.lg, b.lg), lo = std::min(a.lg, b.lg);
    return {a.sign, hi + std::log1p(std::exp(lo - hi))};
  }
  if (a.lg == b.lg) return SignedLogValue::zero();
  const SignedLogValue& big = (a.lg > b.lg) ? a : b;
  const SignedLogValue& small = (a.lg > b.lg) ? b : a;
  double d = std::exp(small.lg - big.lg);  // in (0,1)
  return {big.sign, big.lg + std::log1p(-d)};
}

inline SignedLogValue operator-(const SignedLogValue& a, const SignedLogValue& b) {
  return a + (-b);
}

/// |a|^e for a != 0; fractional e requires a > 0.
inline SignedLogValue pow(const SignedLogValue& a, double e) {
  if (a.sign == 0) return e == 0.0 ? SignedLogValue::one() : SignedLogValue::zero();
  return {a.sign < 0 ? 0 : +1, a.lg * e};  // caller guards negative bases
}

inline SignedLogValue sqrt(const SignedLogValue& a) {
  if (a.sign == 0) return SignedLogValue::zero();
  return {+1, a.lg * 0.5};
}

/// e^x where x is the linear value of a. Requires |x| representable.
inline SignedLogValue exp_value(const SignedLogValue& a) {
  return SignedLogValue::from_log(a.to_double());
}

/// ln(x) for x > 0, as a linear value.
inline SignedLogValue log_value_of(const SignedLogValue& a) {
  return SignedLogValue::from_double(a.lg);
}

/// Numeric order.
inline bool less_than(const SignedLogValue& a, const SignedLogValue& b) {
  if (a.sign != b.sign) return a.sign < b.sign;
  if (a.sign == 0) return false;
  return a.sign > 0 ? a.lg < b.lg : a.lg > b.lg;
}

inline bool operator==(const SignedLogValue& a, const SignedLogValue& b) {
  return a.sign == b.sign && (a.sign == 0 || a.lg == b.lg);
}

/// Relative distance in linear space, computed without leaving log space.
double relative_error(const SignedLogValue& a, const SignedLogValue& b);

/// Stable sum of many signed log-space terms. Positive and negative
/// contributions accumulate separately with a running maximum; they
/// meet only once, in total().
class LogAccumulator {
 public:
  void add(const SignedLogValue& v) {
    if (v.sign == 0) return;
    add_log(v.lg, v.sign);
  }

  void add_log(double lg, int sign = +1) {
    double& mx = (sign > 0) ? max_pos_ : max_neg_;
    double& sm = (sign > 0) ? sum_pos_ : sum_neg_;
    if (std::isinf(mx) && mx < 0) {
      mx = lg;
      sm = 1.0;
      return;
    }
    if (lg <= mx) {
      sm += std::exp(lg - mx);
    } else {
      sm = sm * std::exp(mx - lg) + 1.0;
      mx = lg;
    }
  }

  SignedLogValue positive_part() const { return part(max_pos_, sum_pos_, +1); }
  SignedLogValue negative_part() const { return part(max_neg_, sum_neg_, -1); }

  SignedLogValue total() const { return positive_part() + negative_part(); }

 private:
  static SignedLogValue part(double mx, double sm, int sign) {
    if (std::isinf(mx) && mx < 0) return SignedLogValue::zero();
    return {sign, mx + std::log(sm)};
  }

  double max_pos_ = -std::numeric_limits<double>::infinity();
  double sum_pos_ = 0.0;
  double max_neg_ = -std::numeric_limits<double>::infinity();
  double sum_neg_ = 0.0;
};

}  // namespace khinchin
