#include "khinchin/truncated_series.hpp"

#include <cmath>
#include <stdexcept>

namespace khinchin {

namespace {

void require_same_order(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("series arithmetic requires equal truncation orders");
}

}  // namespace

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_order(a, b);
  TruncatedSeries out(a.order());
  for (int n = 0; n <= a.order(); ++n) out[n] = a[n] + b[n];
  return out;
}

TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_order(a, b);
  TruncatedSeries out(a.order());
  for (int n = 0; n <= a.order(); ++n) out[n] = a[n] - b[n];
  return out;
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_order(a, b);
  TruncatedSeries out(a.order());
  for (int n = 0; n <= a.order(); ++n) {
    LogAccumulator acc;
    for (int k = 0; k <= n; ++k) acc.add(a[k] * b[n - k]);
    out[n] = acc.total();
  }
  return out;
}

TruncatedSeries series_div(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_order(a, b);
  if (b[0].is_zero())
    throw std::domain_error("series division by series with zero constant term");
  TruncatedSeries out(a.order());
  out[0] = a[0] / b[0];
  for (int n = 1; n <= a.order(); ++n) {
    LogAccumulator acc;
    acc.add(a[n]);
    for (int k = 1; k <= n; ++k) acc.add(-(b[k] * out[n - k]));
    out[n] = acc.total() / b[0];
  }
  return out;
}

TruncatedSeries series_exp(const TruncatedSeries& h) {
  TruncatedSeries out(h.order());
  double h0 = h[0].to_double();
  if (!std::isfinite(h0))
    throw std::domain_error("series exp: constant term not representable");
  out[0] = SignedLogValue::from_log(h0);
  // n g_n = sum_{k=1}^{n} k h_k g_{n-k}
  for (int n = 1; n <= h.order(); ++n) {
    LogAccumulator acc;
    for (int k = 1; k <= n; ++k) {
      SignedLogValue kv = SignedLogValue::from_double(static_cast<double>(k));
      acc.add(kv * h[k] * out[n - k]);
    }
    out[n] = acc.total() / SignedLogValue::from_double(static_cast<double>(n));
  }
  return out;
}

TruncatedSeries series_log(const TruncatedSeries& h) {
  if (!h[0].positive())
    throw std::domain_error("series log: constant term must be positive");
  TruncatedSeries out(h.order());
  out[0] = SignedLogValue::from_double(h[0].lg);
  // g_n = (h_n - (1/n) sum_{k=1}^{n-1} k g_k h_{n-k}) / h_0
  for (int n = 1; n <= h.order(); ++n) {
    LogAccumulator acc;
    acc.add(h[n]);
    for (int k = 1; k < n; ++k) {
      SignedLogValue w = SignedLogValue::from_double(static_cast<double>(k) / n);
      acc.add(-(w * out[k] * h[n - k]));
    }
    out[n] = acc.total() / h[0];
  }
  return out;
}

TruncatedSeries series_pow(const TruncatedSeries& h, double alpha) {
  if (!h[0].positive())
    throw std::domain_error("series pow: constant term must be positive");
  TruncatedSeries out(h.order());
  out[0] = SignedLogValue::from_log(alpha * h[0].lg);
  // n h_0 g_n = sum_{k=1}^{n} ((alpha+1) k - n) h_k g_{n-k}
  for (int n = 1; n <= h.order(); ++n) {
    LogAccumulator acc;
    for (int k = 1; k <= n; ++k) {
      double w = (alpha + 1.0) * k - n;
      acc.add(SignedLogValue::from_double(w) * h[k] * out[n - k]);
    }
    out[n] = acc.total() /
             (h[0] * SignedLogValue::from_double(static_cast<double>(n)));
  }
  return out;
}

}  // namespace khinchin
