#include "khinchin/gen_function.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace khinchin {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kEps = 2.2e-16;
}  // namespace

RadiusSpec RadiusSpec::finite(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("RadiusSpec: finite radius must be > 0");
  return {Kind::finite, r};
}

double RadiusSpec::upper() const {
  switch (kind) {
    case Kind::finite:
      return r;
    case Kind::infinite:
      return std::numeric_limits<double>::infinity();
    default:
      throw std::domain_error("radius unknown; supply an explicit bound");
  }
}

std::string ClassKStatus::str() const {
  switch (kind) {
    case Kind::verified:
      return "verified-up-to(" + std::to_string(checked_up_to) + ")";
    case Kind::violated:
      return "violated(n=" + std::to_string(witness) + (detail.empty() ? "" : ": " + detail) + ")";
    default:
      return "unknown";
  }
}

long GenFunction::support_after(long n) const {
  if (next_support) return next_support(n);
  for (long m = n + 1; m <= n + 65536; ++m)
    if (support(m)) return m;
  return -1;
}

namespace {

struct SeriesResult {
  SignedLogValue total;
  double tail_rel = 0.0;
  bool converged = false;
  std::string error;
};

// Adaptive summation of sum w(n) a_n t^n over the support, with a
// geometric tail bound: once per-index term ratios stay below q < 1
// for a sustained run, the tail is below term * q/(1-q).
SeriesResult sum_weighted(const GenFunction& f, double log_t,
                          const std::function<double(long)>& weight_lg,
                          long max_terms) {
  SeriesResult out;
  if (log_t == kNegInf) {  // t = 0: only n = 0 contributes
    double w0 = weight_lg(0);
    SignedLogValue a0 = f.coeff_log(0);
    out.total = (w0 == kNegInf || a0.is_zero())
                    ? SignedLogValue::zero()
                    : SignedLogValue::from_log(a0.lg + w0);
    out.converged = true;
    return out;
  }

  LogAccumulator acc;
  double max_term = kNegInf;
  double prev_term = std::numeric_limits<double>::quiet_NaN();
  long prev_n = -1;
  int decay_run = 0;
  double run_rate_max = kNegInf;  // max per-index ln-ratio over the decay run
  long used = 0;

  long n = f.support(0) ? 0 : f.support_after(0);
  while (n >= 0) {
    if (++used > max_terms) {
      double achieved = std::numeric_limits<double>::infinity();
      if (decay_run > 0 && run_rate_max < 0.0) {
        double q = std::exp(run_rate_max);
        achieved = std::exp(prev_term + std::log(q / (1 - q)) - acc.total().lg);
      }
      out.error = "tail bound unattainable within " + std::to_string(max_terms) +
                  " terms";
      out.tail_rel = achieved;
      out.total = acc.total();
      return out;
    }

    SignedLogValue c = f.coeff_log(n);
    if (c.sign < 0) {
      out.error = "negative coefficient at n=" + std::to_string(n);
      return out;
    }
    double term = c.is_zero() ? kNegInf : c.lg + static_cast<double>(n) * log_t + weight_lg(n);

    if (term != kNegInf && !std::isnan(term)) {
      acc.add_log(term);
      max_term = std::max(max_term, term);
      if (prev_n >= 0 && prev_term != kNegInf) {
        double rate = (term - prev_term) / static_cast<double>(n - prev_n);
        if (rate < 0.0) {
          ++decay_run;
          run_rate_max = std::max(run_rate_max, rate);
        } else {
          decay_run = 0;
          run_rate_max = kNegInf;
        }
      }
      prev_term = term;
      prev_n = n;

      if (decay_run >= 8) {
        double q = std::exp(run_rate_max);
        if (q < 0.97) {
          double sum_lg = acc.total().lg;
          double tail_rel = std::exp(term + std::log(q / (1 - q)) - sum_lg);
          if (tail_rel < 1e-15) {
            out.total = acc.total();
            out.tail_rel = 4.0 * tail_rel;  // safety factor on the ratio estimate
            out.converged = true;
            return out;
          }
        }
      }
    }
    n = f.support_after(n);
  }

  // Support exhausted: the sum is exact up to rounding.
  out.total = acc.total();
  out.tail_rel = kEps * std::sqrt(static_cast<double>(std::max<long>(used, 1)));
  out.converged = true;
  return out;
}

double falling_weight_lg(long n, int k) {
  if (n < k) return kNegInf;
  double s = 0.0;
  for (int i = 0; i < k; ++i) s += std::log(static_cast<double>(n - i));
  return s;
}

}  // namespace

Eval<SignedLogValue> GenFunction::weighted_sum(double p, double log_t) const {
  auto w = [p](long n) -> double {
    if (p == 0.0) return 0.0;
    if (n == 0) return kNegInf;
    return p * std::log(static_cast<double>(n));
  };
  SeriesResult r = sum_weighted(*this, log_t, w, max_series_terms);
  if (!r.converged)
    return Eval<SignedLogValue>::failure(r.error, r.tail_rel);
  return Eval<SignedLogValue>::success(r.total, r.tail_rel);
}

Eval<SignedLogValue> GenFunction::weighted_sum_falling(int k, double log_t) const {
  auto w = [k](long n) { return falling_weight_lg(n, k); };
  SeriesResult r = sum_weighted(*this, log_t, w, max_series_terms);
  if (!r.converged)
    return Eval<SignedLogValue>::failure(r.error, r.tail_rel);
  return Eval<SignedLogValue>::success(r.total, r.tail_rel);
}

Eval<SignedLogValue> GenFunction::log_value(double t) const {
  if (t < 0.0)
    return Eval<SignedLogValue>::failure("t must be nonnegative");
  if (radius.is_finite() && t >= radius.r)
    return Eval<SignedLogValue>::failure("t >= radius of convergence");
  if (has_jet() && !sparse_support) {
    try {
      Jet j = log_jet(t);
      if (std::isfinite(j.v.lg) || j.v.is_zero())
        return Eval<SignedLogValue>::success(j.v, kEps);
      return Eval<SignedLogValue>::failure("hook overflow at t=" + std::to_string(t));
    } catch (const std::exception& e) {
      return Eval<SignedLogValue>::failure(std::string("hook failure: ") + e.what());
    }
  }
  auto s0 = weighted_sum(0.0, std::log(t));
  if (!s0.ok()) return s0;
  return Eval<SignedLogValue>::success(log_value_of(*s0), s0.tail_bound);
}

namespace {

Eval<FamilyCore> jet_core(const GenFunction& f, double t) {
  Jet j;
  try {
    j = f.log_jet(t);
  } catch (const std::exception& e) {
    return Eval<FamilyCore>::failure(std::string("hook failure: ") + e.what());
  }
  for (const SignedLogValue* v : {&j.v, &j.d1, &j.d2, &j.d3})
    if (v->sign != 0 && !std::isfinite(v->lg))
      return Eval<FamilyCore>::failure("hook overflow at t=" + std::to_string(t));

  SignedLogValue lt = SignedLogValue::from_double(t);
  SignedLogValue lt2 = lt * lt, lt3 = lt2 * lt;
  SignedLogValue three = SignedLogValue::from_double(3.0);

  FamilyCore core;
  core.log_t = std::log(t);
  core.log_f = j.v;
  core.mean = lt * j.d1;
  core.fm2 = lt2 * (j.d1 * j.d1 + j.d2);
  core.fm3 = lt3 * (j.d1 * j.d1 * j.d1 + three * (j.d1 * j.d2) + j.d3);
  double amp = 1.0;
  if (f.variance_hook) {
    core.variance = f.variance_hook(t);
  } else {
    SignedLogValue a = lt * j.d1, b = lt2 * j.d2;
    core.variance = a + b;
    if (b.sign < 0 && !core.variance.is_zero())
      amp = std::exp(std::max(a.lg, b.lg) - core.variance.lg);
  }
  if (core.variance.sign < 0)
    return Eval<FamilyCore>::failure("variance lost to cancellation at t=" +
                                     std::to_string(t));
  core.tail_bound = kEps * std::max(amp, 1.0);
  return Eval<FamilyCore>::success(core, core.tail_bound);
}

struct SupportTerm {
  long n;
  double lg;  // ln(a_n t^n)
};

Eval<FamilyCore> sparse_core(const GenFunction& f, double log_t) {
  std::vector<SupportTerm> terms;
  double max_lg = kNegInf;
  if (log_t == kNegInf) {
    terms.push_back({0, f.coeff_log(0).lg});
    max_lg = terms[0].lg;
  } else {
    long n = f.support(0) ? 0 : f.support_after(0);
    int fading = 0;
    while (n >= 0 && terms.size() < 16384) {
      SignedLogValue c = f.coeff_log(n);
      if (c.sign < 0)
        return Eval<FamilyCore>::failure("negative coefficient at n=" + std::to_string(n));
      if (!c.is_zero()) {
        double lg = c.lg + static_cast<double>(n) * log_t;
        terms.push_back({n, lg});
        if (lg > max_lg) {
          max_lg = lg;
          fading = 0;
        } else if (lg < max_lg - 200.0) {
          if (++fading >= 3) break;
        }
      }
      n = f.support_after(n);
    }
    if (terms.size() >= 16384)
      return Eval<FamilyCore>::failure("sparse support enumeration exceeded cap");
  }

  LogAccumulator s0, s1, s2f, s3f;
  for (const auto& tm : terms) {
    s0.add_log(tm.lg);
    if (tm.n >= 1) s1.add_log(tm.lg + std::log(static_cast<double>(tm.n)));
    if (tm.n >= 2) s2f.add_log(tm.lg + falling_weight_lg(tm.n, 2));
    if (tm.n >= 3) s3f.add_log(tm.lg + falling_weight_lg(tm.n, 3));
  }
  SignedLogValue S0 = s0.total();
  if (S0.is_zero()) return Eval<FamilyCore>::failure("empty support in range");

  // Variance through the pairwise form: all terms nonnegative, exact
  // even when the distribution is nearly degenerate.
  LogAccumulator pair_acc;
  for (size_t i = 0; i < terms.size(); ++i) {
    for (size_t j = i + 1; j < terms.size(); ++j) {
      double dn = static_cast<double>(terms[j].n - terms[i].n);
      pair_acc.add_log(terms[i].lg + terms[j].lg + 2.0 * std::log(dn));
    }
  }

  FamilyCore core;
  core.log_t = log_t;
  core.log_f = log_value_of(S0);
  core.mean = s1.total() / S0;
  core.fm2 = s2f.total() / S0;
  core.fm3 = s3f.total() / S0;
  core.variance = pair_acc.total() / (S0 * S0);
  core.tail_bound = kEps * std::sqrt(static_cast<double>(terms.size()) + 1.0);
  return Eval<FamilyCore>::success(core, core.tail_bound);
}

Eval<FamilyCore> series_core(const GenFunction& f, double log_t) {
  auto S0 = f.weighted_sum(0.0, log_t);
  if (!S0.ok()) return Eval<FamilyCore>::failure(S0.error, S0.tail_bound);
  auto S1 = f.weighted_sum(1.0, log_t);
  if (!S1.ok()) return Eval<FamilyCore>::failure(S1.error, S1.tail_bound);
  auto F2 = f.weighted_sum_falling(2, log_t);
  if (!F2.ok()) return Eval<FamilyCore>::failure(F2.error, F2.tail_bound);
  auto F3 = f.weighted_sum_falling(3, log_t);
  if (!F3.ok()) return Eval<FamilyCore>::failure(F3.error, F3.tail_bound);

  FamilyCore core;
  core.log_t = log_t;
  core.log_f = log_value_of(*S0);
  core.mean = *S1 / *S0;
  core.fm2 = *F2 / *S0;
  core.fm3 = *F3 / *S0;
  SignedLogValue ex2 = core.ex2();
  core.variance = ex2 - core.mean * core.mean;
  double tails = S0.tail_bound + S1.tail_bound + F2.tail_bound + F3.tail_bound;
  if (core.variance.sign <= 0)
    return Eval<FamilyCore>::failure("variance lost to cancellation");
  double amp = std::exp(ex2.lg - core.variance.lg);
  core.tail_bound = tails + kEps * amp;
  return Eval<FamilyCore>::success(core, core.tail_bound);
}

}  // namespace

Eval<FamilyCore> GenFunction::core(double t) const {
  if (t < 0.0) return Eval<FamilyCore>::failure("t must be nonnegative");
  if (radius.is_finite() && t >= radius.r)
    return Eval<FamilyCore>::failure("t >= radius of convergence");
  if (t == 0.0) {
    FamilyCore c;
    c.log_t = kNegInf;
    c.log_f = log_value_of(coeff_log(0));
    c.mean = c.variance = c.fm2 = c.fm3 = SignedLogValue::zero();
    return Eval<FamilyCore>::success(c);
  }
  if (sparse_support) return sparse_core(*this, std::log(t));
  if (has_jet()) return jet_core(*this, t);
  return series_core(*this, std::log(t));
}

Eval<FamilyCore> GenFunction::core_log(double log_t) const {
  if (radius.is_finite() && log_t >= std::log(radius.r))
    return Eval<FamilyCore>::failure("t >= radius of convergence");
  if (sparse_support) return sparse_core(*this, log_t);
  double t = std::exp(log_t);
  if (has_jet() && std::isfinite(t) && t > 0.0) return jet_core(*this, t);
  return series_core(*this, log_t);
}

Eval<double> GenFunction::log_modulus(double t, double theta) const {
  if (log_modulus_hook) return Eval<double>::success(log_modulus_hook(t, theta), kEps);
  if (radius.is_finite() && t >= radius.r)
    return Eval<double>::failure("t >= radius of convergence");
  double log_t = std::log(t);

  // Pass 1: magnitude scale and truncation point.
  auto s0 = weighted_sum(0.0, log_t);
  if (!s0.ok()) return Eval<double>::failure(s0.error, s0.tail_bound);
  double scale = (*s0).lg;

  // Pass 2: complex sum, rescaled.
  double re = 0.0, im = 0.0;
  long n = support(0) ? 0 : support_after(0);
  long used = 0;
  double max_term = kNegInf;
  while (n >= 0 && used <= max_series_terms) {
    ++used;
    SignedLogValue c = coeff_log(n);
    if (!c.is_zero()) {
      double lg = c.lg + static_cast<double>(n) * log_t;
      max_term = std::max(max_term, lg);
      double mag = std::exp(lg - scale);
      re += mag * std::cos(n * theta);
      im += mag * std::sin(n * theta);
      if (lg < max_term - 60.0 && lg < scale - 60.0) break;
    }
    n = support_after(n);
  }
  double mod = std::hypot(re, im);
  double lg = (mod == 0.0) ? kNegInf : scale + std::log(mod);
  return Eval<double>::success(lg, s0.tail_bound + kEps * std::sqrt(double(used)));
}

ClassKStatus validate_class_k(const GenFunction& f, long up_to) {
  ClassKStatus st;
  SignedLogValue a0 = f.coeff_log(0);
  if (a0.sign <= 0) {
    st.kind = ClassKStatus::Kind::violated;
    st.witness = 0;
    st.detail = "constant term must be positive";
    return st;
  }
  long nonzero = 1;
  long n = 0;
  while (true) {
    n = f.support_after(n);
    if (n < 0 || n > up_to) break;
    SignedLogValue c = f.coeff_log(n);
    if (c.sign < 0) {
      st.kind = ClassKStatus::Kind::violated;
      st.witness = n;
      st.detail = "negative coefficient";
      return st;
    }
    if (c.sign > 0) ++nonzero;
  }
  if (nonzero < 2) {
    st.kind = ClassKStatus::Kind::violated;
    st.witness = -1;
    st.detail = "constant function (needs a second nonzero coefficient)";
    return st;
  }
  st.kind = ClassKStatus::Kind::verified;
  st.checked_up_to = up_to;
  return st;
}

}  // namespace khinchin
