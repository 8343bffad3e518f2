#include "khinchin/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "khinchin/constants.hpp"
#include "khinchin/quadrature.hpp"
#include "khinchin/truncated_series.hpp"

namespace khinchin {

double CanonicalProductSpec::b(long k) const {
  switch (rule) {
    case Rule::geometric:
      return c * std::pow(ratio, static_cast<double>(k));
    case Rule::power:
      return std::pow(static_cast<double>(k), exponent);
    case Rule::double_exp:
      return std::exp(std::exp(static_cast<double>(k)));
    case Rule::list:
      if (k < 1 || k > static_cast<long>(zeros.size()))
        return std::numeric_limits<double>::infinity();
      return zeros[static_cast<size_t>(k) - 1];
  }
  return 0.0;
}

long CanonicalProductSpec::zero_count(double t) const {
  if (t <= 0.0) return 0;
  long K = 0;
  switch (rule) {
    case Rule::geometric: {
      if (t < b(1)) return 0;
      long est = static_cast<long>(std::floor(std::log(t / c) / std::log(ratio)));
      K = std::max<long>(est - 2, 0);
      while (b(K + 1) <= t) ++K;
      break;
    }
    case Rule::power: {
      long est = static_cast<long>(std::floor(std::pow(t, 1.0 / exponent)));
      K = std::max<long>(est - 2, 0);
      while (b(K + 1) <= t) ++K;
      break;
    }
    case Rule::double_exp:
      while (b(K + 1) <= t) ++K;
      break;
    case Rule::list:
      while (K < static_cast<long>(zeros.size()) && zeros[static_cast<size_t>(K)] <= t) ++K;
      break;
  }
  if (mult == Mult::one) return K;
  return K * (K + 1) / 2;
}

bool CanonicalProductSpec::check_doubling(long upto) const {
  long last = upto;
  if (rule == Rule::list) last = std::min<long>(upto, static_cast<long>(zeros.size()) - 1);
  for (long k = 1; k <= last; ++k)
    if (b(k + 1) < 2.0 * b(k)) return false;
  return true;
}

CanonicalProductSpec::ConvergenceReport CanonicalProductSpec::convergence() const {
  ConvergenceReport rep;
  switch (rule) {
    case Rule::geometric:
      rep.convergent = ratio > 1.0;
      rep.verified = true;
      rep.note = "geometric rule";
      return rep;
    case Rule::double_exp:
      rep.convergent = true;
      rep.verified = true;
      rep.note = "doubly exponential rule";
      return rep;
    case Rule::power: {
      double needed = mult == Mult::one ? 1.0 : 2.0;
      rep.convergent = exponent > needed;
      rep.verified = true;
      rep.note = "power rule";
      return rep;
    }
    case Rule::list:
      break;
  }
  // Ratio / partial-sum heuristic over the available window.
  long K = static_cast<long>(zeros.size());
  if (K < 2) {
    rep.convergent = true;
    rep.verified = true;
    rep.note = "finite list";
    return rep;
  }
  double worst = 0.0;
  for (long k = std::max<long>(1, K - 16); k < K; ++k) {
    double term_k = multiplicity(k) / b(k);
    double term_k1 = multiplicity(k + 1) / b(k + 1);
    worst = std::max(worst, term_k1 / term_k);
  }
  rep.convergent = true;  // finite lists always converge
  rep.verified = worst < 0.97;
  rep.note = rep.verified ? "ratio test" : "ratio test inconclusive; flagged unverified";
  return rep;
}

std::string CanonicalProductSpec::describe() const {
  char buf[96];
  switch (rule) {
    case Rule::geometric:
      std::snprintf(buf, sizeof(buf), "canon(b_k=%g*%g^k)", c, ratio);
      break;
    case Rule::power:
      std::snprintf(buf, sizeof(buf), "canon(b_k=k^%g)", exponent);
      break;
    case Rule::double_exp:
      std::snprintf(buf, sizeof(buf), "canon(b_k=e^(e^k))");
      break;
    case Rule::list:
      std::snprintf(buf, sizeof(buf), "canon(list of %zu zeros)", zeros.size());
      break;
  }
  std::string s = buf;
  if (mult == Mult::linear) s += "^k";
  return s;
}

CanonicalProductSpec CanonicalProductSpec::geometric_rule(double c, double ratio) {
  if (!(c > 0.0) || !(ratio > 1.0))
    throw std::invalid_argument("canonical geometric rule requires c > 0, ratio > 1");
  CanonicalProductSpec s;
  s.rule = Rule::geometric;
  s.c = c;
  s.ratio = ratio;
  return s;
}

CanonicalProductSpec CanonicalProductSpec::power_rule(double exponent) {
  if (!(exponent > 1.0))
    throw std::invalid_argument("canonical power rule requires exponent > 1");
  CanonicalProductSpec s;
  s.rule = Rule::power;
  s.exponent = exponent;
  return s;
}

CanonicalProductSpec CanonicalProductSpec::double_exp_rule() {
  CanonicalProductSpec s;
  s.rule = Rule::double_exp;
  return s;
}

CanonicalProductSpec CanonicalProductSpec::list_rule(std::vector<double> zeros) {
  for (size_t i = 0; i < zeros.size(); ++i) {
    if (!(zeros[i] > 0.0) || (i > 0 && zeros[i] <= zeros[i - 1]))
      throw std::invalid_argument("canonical list must be positive and strictly increasing");
  }
  CanonicalProductSpec s;
  s.rule = Rule::list;
  s.zeros = std::move(zeros);
  return s;
}

namespace {

// Accumulates the four ln-f jet components plus a relative tail bound.
struct CanonicalSums {
  double value = 0.0;  // sum mult ln(1+t/b)
  double d1 = 0.0;     // sum mult / (t+b)
  double d2 = 0.0;     // sum mult * -1/(t+b)^2
  double d3 = 0.0;     // sum mult * 2/(t+b)^3
  double mean = 0.0;   // sum mult * t/(t+b)
  double var = 0.0;    // sum mult * b t/(t+b)^2
  double tail_rel = 0.0;
  bool ok = true;
  std::string error;
};

CanonicalSums canonical_sums(const CanonicalProductSpec& spec, double t) {
  CanonicalSums s;
  if (t == 0.0) return s;

  auto add_term = [&](long k) {
    double bk = spec.b(k);
    double m = static_cast<double>(spec.multiplicity(k));
    double tb = t + bk;
    s.value += m * std::log1p(t / bk);
    s.d1 += m / tb;
    s.d2 -= m / (tb * tb);
    s.d3 += 2.0 * m / (tb * tb * tb);
    s.mean += m * t / tb;
    s.var += m * bk * t / (tb * tb);
  };

  if (spec.rule == CanonicalProductSpec::Rule::power) {
    double knee = std::pow(t, 1.0 / spec.exponent);
    long J = static_cast<long>(std::ceil(6.0 * knee)) + 64;
    if (J > 20000000) {
      s.ok = false;
      s.error = "tail bound unattainable: too many factors near t";
      return s;
    }
    for (long k = 1; k <= J; ++k) add_term(k);
    // Tail corrections: sum_{k>J} g(k) ~ integral_{J+1/2}^inf g(x) dx.
    double mlin = spec.mult == CanonicalProductSpec::Mult::linear ? 1.0 : 0.0;
    auto weight = [&](double x) { return mlin > 0.0 ? x : 1.0; };
    double a = spec.exponent;
    double from = static_cast<double>(J) + 0.5;
    auto pw = [&](double x) { return std::pow(x, a); };
    double tail_value =
        integrate_tail_log([&](double x) { return weight(x) * std::log1p(t / pw(x)); }, from, 1e-10);
    double tail_mean =
        integrate_tail_log([&](double x) { return weight(x) * t / (t + pw(x)); }, from, 1e-10);
    double tail_var = integrate_tail_log(
        [&](double x) {
          double tb = t + pw(x);
          return weight(x) * pw(x) * t / (tb * tb);
        },
        from, 1e-10);
    double tail_d1 = integrate_tail_log(
        [&](double x) { return weight(x) / (t + pw(x)); }, from, 1e-10);
    double tail_d2 = integrate_tail_log(
        [&](double x) {
          double tb = t + pw(x);
          return weight(x) / (tb * tb);
        },
        from, 1e-10);
    double tail_d3 = integrate_tail_log(
        [&](double x) {
          double tb = t + pw(x);
          return weight(x) * 2.0 / (tb * tb * tb);
        },
        from, 1e-10);
    s.value += tail_value;
    s.mean += tail_mean;
    s.var += tail_var;
    s.d1 += tail_d1;
    s.d2 -= tail_d2;
    s.d3 += tail_d3;
    // Euler-Maclaurin discretization error is of the order of g'(J)/24.
    double g_at_J = t / (t + pw(from));
    s.tail_rel = (g_at_J * spec.exponent / from) / std::max(s.mean, 1e-300) / 24.0 + 1e-10;
    return s;
  }

  // Geometric-type decay: sum until factors stop mattering.
  long k = 1;
  double last_contrib = 0.0;
  for (; k <= 4000000; ++k) {
    double bk = spec.b(k);
    if (spec.rule == CanonicalProductSpec::Rule::list &&
        k > static_cast<long>(spec.zeros.size()))
      break;
    add_term(k);
    last_contrib = spec.multiplicity(k) * t / bk;
    if (bk > t && last_contrib < 1e-18 * std::max(s.value, 1.0)) {
      ++k;
      break;
    }
  }
  if (spec.rule != CanonicalProductSpec::Rule::list) {
    // Remaining factors are dominated by a geometric series.
    double bk = spec.b(k);
    double q = bk > 0 ? spec.b(k - 1 >= 1 ? k - 1 : 1) / bk : 0.0;
    double tail = spec.multiplicity(k) * (t / bk) / std::max(1.0 - q, 0.01);
    s.tail_rel = tail / std::max(s.value, 1e-300);
  }
  return s;
}

}  // namespace

Eval<CanonicalValues> canonical_eval(const CanonicalProductSpec& spec, double t) {
  if (t < 0.0) return Eval<CanonicalValues>::failure("t must be nonnegative");
  auto conv = spec.convergence();
  if (!conv.convergent)
    return Eval<CanonicalValues>::failure("zero sequence fails convergence: " + conv.note);
  CanonicalSums s = canonical_sums(spec, t);
  if (!s.ok) return Eval<CanonicalValues>::failure(s.error);
  CanonicalValues v;
  v.log_f = s.value;
  v.mean = s.mean;
  v.variance = s.var;
  v.zero_count = spec.zero_count(t);
  v.tail_bound = s.tail_rel;
  return Eval<CanonicalValues>::success(v, s.tail_rel);
}

Eval<Jet> canonical_log_jet(const CanonicalProductSpec& spec, double t) {
  CanonicalSums s = canonical_sums(spec, t);
  if (!s.ok) return Eval<Jet>::failure(s.error);
  Jet j{SignedLogValue::from_double(s.value), SignedLogValue::from_double(s.d1),
        SignedLogValue::from_double(s.d2), SignedLogValue::from_double(s.d3)};
  return Eval<Jet>::success(j, s.tail_rel);
}

namespace {

// Coefficients of the product via ln f = sum_m (-1)^{m+1} P_m z^m / m,
// where P_m = sum_k mult(k) b_k^{-m} has a closed or rapidly
// convergent form for every rule.
double power_sum(const CanonicalProductSpec& spec, long m) {
  switch (spec.rule) {
    case CanonicalProductSpec::Rule::geometric: {
      double x = std::pow(spec.ratio, -static_cast<double>(m));
      double base = std::pow(spec.c, -static_cast<double>(m));
      if (spec.mult == CanonicalProductSpec::Mult::one) return base * x / (1.0 - x);
      return base * x / ((1.0 - x) * (1.0 - x));
    }
    case CanonicalProductSpec::Rule::power: {
      double a = spec.exponent * m;
      if (spec.mult == CanonicalProductSpec::Mult::one) return zeta(a);
      return zeta(a - 1.0);
    }
    case CanonicalProductSpec::Rule::double_exp: {
      double sum = 0.0;
      for (long k = 1; k < 40; ++k) {
        double term = spec.multiplicity(k) * std::exp(-m * std::exp(static_cast<double>(k)));
        sum += term;
        if (term < 1e-300) break;
      }
      return sum;
    }
    case CanonicalProductSpec::Rule::list: {
      double sum = 0.0;
      for (long k = 1; k <= static_cast<long>(spec.zeros.size()); ++k)
        sum += spec.multiplicity(k) * std::pow(spec.b(k), -static_cast<double>(m));
      return sum;
    }
  }
  return 0.0;
}

struct CoeffTable {
  std::vector<SignedLogValue> coeffs;
  std::mutex mutex;
};

}  // namespace

GenFunction make_canonical(const CanonicalProductSpec& spec) {
  GenFunction g;
  g.name = spec.describe();
  g.radius = RadiusSpec::infinite();
  g.class_k.kind = ClassKStatus::Kind::verified;
  g.class_k.checked_up_to = std::numeric_limits<long>::max();
  g.class_k.detail = "nonnegative coefficients by construction";

  long degree = -1;
  if (spec.rule == CanonicalProductSpec::Rule::list) {
    degree = 0;
    for (long k = 1; k <= static_cast<long>(spec.zeros.size()); ++k)
      degree += spec.multiplicity(k);
  }
  g.poly_degree = degree;

  for (long k = 1; k <= 8; ++k) {
    double bk = spec.b(k);
    if (!std::isfinite(bk)) break;
    g.known_zeros.push_back({bk, kPi});
  }

  auto table = std::make_shared<CoeffTable>();
  auto ensure = [table, spec](long n) {
    std::lock_guard<std::mutex> lock(table->mutex);
    if (static_cast<long>(table->coeffs.size()) > n) return;
    long N = 64;
    while (N <= n) N *= 2;
    if (N > 8192) throw std::invalid_argument("canonical coefficient table capped at 8192");
    TruncatedSeries h(static_cast<int>(N));
    for (long m = 1; m <= N; ++m) {
      double pm = power_sum(spec, m);
      double v = (m % 2 == 1 ? 1.0 : -1.0) * pm / static_cast<double>(m);
      h[static_cast<int>(m)] = SignedLogValue::from_double(v);
    }
    TruncatedSeries f = series_exp(h);
    table->coeffs.resize(static_cast<size_t>(N) + 1);
    for (long i = 0; i <= N; ++i) table->coeffs[static_cast<size_t>(i)] = f[static_cast<int>(i)];
  };

  g.coeff_log = [table, ensure, degree](long n) -> SignedLogValue {
    if (n < 0) return SignedLogValue::zero();
    if (degree >= 0 && n > degree) return SignedLogValue::zero();
    ensure(n);
    std::lock_guard<std::mutex> lock(table->mutex);
    return table->coeffs[static_cast<size_t>(n)];
  };
  g.support = [degree](long n) { return n >= 0 && (degree < 0 || n <= degree); };
  g.next_support = [degree](long n) -> long {
    long m = n + 1;
    if (degree >= 0 && m > degree) return -1;
    return m;
  };

  g.log_jet = [spec](double t) -> Jet {
    auto j = canonical_log_jet(spec, t);
    if (!j.ok()) throw std::runtime_error(j.error);
    return *j;
  };
  g.variance_hook = [spec](double t) -> SignedLogValue {
    auto v = canonical_eval(spec, t);
    if (!v.ok()) throw std::runtime_error(v.error);
    return SignedLogValue::from_double((*v).variance);
  };
  g.log_modulus_hook = [spec](double t, double theta) -> double {
    // ln|f| = sum mult * (1/2) ln( (1 + t cos(theta)/b)^2 + (t sin(theta)/b)^2 )
    double sum = 0.0;
    double ct = std::cos(theta), st = std::sin(theta);
    for (long k = 1; k <= 2000000; ++k) {
      double bk = spec.b(k);
      if (spec.rule == CanonicalProductSpec::Rule::list &&
          k > static_cast<long>(spec.zeros.size()))
        break;
      double re = 1.0 + t * ct / bk;
      double im = t * st / bk;
      double mod2 = re * re + im * im;
      if (mod2 == 0.0) return -std::numeric_limits<double>::infinity();
      sum += 0.5 * spec.multiplicity(k) * std::log(mod2);
      if (bk > t && t / bk < 1e-16) break;
    }
    return sum;
  };
  return g;
}

}  // namespace khinchin
