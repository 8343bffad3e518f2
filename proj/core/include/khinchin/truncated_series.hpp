#pragma once

#include <vector>

#include "khinchin/signed_log.hpp"

namespace khinchin {

/// Power series truncated at order N: coefficients of z^0 .. z^N,
/// each a SignedLogValue. Arithmetic never changes the order.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(int order)
      : coeffs_(static_cast<size_t>(order) + 1) {}

  static TruncatedSeries constant(double c, int order) {
    TruncatedSeries s(order);
    s.coeffs_[0] = SignedLogValue::from_double(c);
    return s;
  }

  static TruncatedSeries variable(int order) {
    TruncatedSeries s(order);
    if (order >= 1) s.coeffs_[1] = SignedLogValue::one();
    return s;
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }

  const SignedLogValue& operator[](int n) const { return coeffs_[static_cast<size_t>(n)]; }
  SignedLogValue& operator[](int n) { return coeffs_[static_cast<size_t>(n)]; }

 private:
  std::vector<SignedLogValue> coeffs_;
};

// Coefficientwise ops; throw std::invalid_argument on mismatched orders.
TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b);

/// Cauchy convolution truncated at the common order.
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);

/// a/b; requires b[0] != 0.
TruncatedSeries series_div(const TruncatedSeries& a, const TruncatedSeries& b);

/// exp(h); the constant term of h must be linearly representable.
TruncatedSeries series_exp(const TruncatedSeries& h);

/// log(h); requires h[0] > 0.
TruncatedSeries series_log(const TruncatedSeries& h);

/// h^alpha for real alpha; requires h[0] > 0.
TruncatedSeries series_pow(const TruncatedSeries& h, double alpha);

}  // namespace khinchin
