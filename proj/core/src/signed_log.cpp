#include "khinchin/signed_log.hpp"

#include <cstdio>

namespace khinchin {

std::string SignedLogValue::str() const {
  if (sign == 0) return "0";
  char buf[64];
  double v = to_double();
  if (std::isfinite(v) && (v == 0.0 || std::abs(lg) < 690.0)) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
  } else {
    std::snprintf(buf, sizeof(buf), "%sexp(%.17g)", sign < 0 ? "-" : "", lg);
  }
  return buf;
}

double relative_error(const SignedLogValue& a, const SignedLogValue& b) {
  if (a.sign == 0 && b.sign == 0) return 0.0;
  SignedLogValue diff = a - b;
  if (diff.sign == 0) return 0.0;
  double scale = std::max(a.lg, b.lg);
  return std::exp(diff.lg - scale);
}

}  // namespace khinchin
