#pragma once

#include <stdexcept>

#include "khinchin/signed_log.hpp"

namespace khinchin {

/// Value and first three derivatives with respect to t, each in signed
/// log-space. Carries ln f and its derivatives through expression
/// evaluation without forming f itself, which keeps products and
/// exponentials of large functions stable.
struct Jet {
  SignedLogValue v, d1, d2, d3;

  static Jet constant(const SignedLogValue& c) {
    return {c, SignedLogValue::zero(), SignedLogValue::zero(), SignedLogValue::zero()};
  }
  static Jet constant(double c) { return constant(SignedLogValue::from_double(c)); }
  static Jet variable(double t) {
    return {SignedLogValue::from_double(t), SignedLogValue::one(),
            SignedLogValue::zero(), SignedLogValue::zero()};
  }
};

inline Jet operator+(const Jet& a, const Jet& b) {
  return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}

inline Jet operator-(const Jet& a, const Jet& b) {
  return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}

inline Jet operator-(const Jet& a) { return {-a.v, -a.d1, -a.d2, -a.d3}; }

inline Jet operator*(const Jet& a, const Jet& b) {
  SignedLogValue three = SignedLogValue::from_double(3.0);
  SignedLogValue two = SignedLogValue::from_double(2.0);
  return {a.v * b.v,
          a.d1 * b.v + a.v * b.d1,
          a.d2 * b.v + two * (a.d1 * b.d1) + a.v * b.d2,
          a.d3 * b.v + three * (a.d2 * b.d1) + three * (a.d1 * b.d2) + a.v * b.d3};
}

inline Jet jet_scale(const SignedLogValue& c, const Jet& a) {
  return {c * a.v, c * a.d1, c * a.d2, c * a.d3};
}

/// 1/v; requires v.v != 0.
inline Jet jet_inv(const Jet& u) {
  SignedLogValue w = SignedLogValue::one() / u.v;
  SignedLogValue w2 = w * w, w3 = w2 * w, w4 = w2 * w2;
  SignedLogValue six = SignedLogValue::from_double(6.0);
  SignedLogValue two = SignedLogValue::from_double(2.0);
  return {w,
          -(w2 * u.d1),
          two * (w3 * (u.d1 * u.d1)) - w2 * u.d2,
          -(six * (w4 * (u.d1 * u.d1 * u.d1))) + six * (w3 * (u.d1 * u.d2)) - w2 * u.d3};
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * jet_inv(b); }

/// ln(u); requires u.v > 0. The derivative components are the
/// logarithmic derivatives of u.
inline Jet jet_log(const Jet& u) {
  if (!u.v.positive())
    throw std::domain_error("jet_log: argument must be positive");
  SignedLogValue r = u.d1 / u.v;
  SignedLogValue s = u.d2 / u.v;
  SignedLogValue q = u.d3 / u.v;
  SignedLogValue two = SignedLogValue::from_double(2.0);
  SignedLogValue three = SignedLogValue::from_double(3.0);
  return {log_value_of(u.v), r, s - r * r, q - three * (r * s) + two * (r * r * r)};
}

/// exp(u); requires the value of u to be representable as double.
inline Jet jet_exp(const Jet& u) {
  SignedLogValue e = exp_value(u.v);
  SignedLogValue three = SignedLogValue::from_double(3.0);
  return {e, e * u.d1, e * (u.d2 + u.d1 * u.d1),
          e * (u.d3 + three * (u.d1 * u.d2) + u.d1 * u.d1 * u.d1)};
}

/// u^alpha; requires u.v > 0 unless alpha is an integer.
inline Jet jet_pow(const Jet& u, double alpha) {
  double ip;
  if (std::modf(alpha, &ip) == 0.0 && std::abs(alpha) <= 512.0) {
    long n = static_cast<long>(ip);
    Jet acc = Jet::constant(1.0);
    Jet base = n < 0 ? jet_inv(u) : u;
    for (long i = 0; i < std::abs(n); ++i) acc = acc * base;
    return acc;
  }
  return jet_exp(jet_scale(SignedLogValue::from_double(alpha), jet_log(u)));
}

}  // namespace khinchin
