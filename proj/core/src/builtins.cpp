#include "khinchin/builtins.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "khinchin/constants.hpp"
#include "khinchin/exact.hpp"

namespace khinchin {
namespace builtins {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double to_lg(const BigRational& q) {
  if (q == 0) return kNegInf;
  // ln(num/den) via string-free conversion: cpp_rational -> double may
  // overflow, so go through numerator/denominator logs.
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  auto big_log = [](const BigInt& v) {
    BigInt a = boost::multiprecision::abs(v);
    unsigned bits = boost::multiprecision::msb(a);
    if (bits <= 900) return std::log(a.convert_to<double>());
    BigInt shifted = a >> (bits - 64);
    return std::log(shifted.convert_to<double>()) + (bits - 64) * std::log(2.0);
  };
  return big_log(num) - big_log(den);
}

}  // namespace

GenFunction exponential() {
  GenFunction g;
  g.name = "exp(z)";
  g.radius = RadiusSpec::infinite();
  g.class_k.kind = ClassKStatus::Kind::verified;
  g.class_k.checked_up_to = std::numeric_limits<long>::max();
  g.coeff_log = [](long n) {
    return SignedLogValue::from_log(-std::lgamma(static_cast<double>(n) + 1.0));
  };
  g.support = [](long n) { return n >= 0; };
  g.next_support = [](long n) -> long { return n + 1; };
  g.coeff_exact = [](long n) { return exact::exponential_coeff(n); };
  g.log_jet = [](double t) {
    return Jet{SignedLogValue::from_double(t), SignedLogValue::one(),
               SignedLogValue::zero(), SignedLogValue::zero()};
  };
  g.factorial_hook = [](int k, double t) {
    if (t == 0.0) return k == 0 ? SignedLogValue::one() : SignedLogValue::zero();
    return SignedLogValue::from_log(k * std::log(t));
  };
  return g;
}

GenFunction geometric(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("geometric: alpha must be > 0");
  GenFunction g;
  bool integer = std::floor(alpha) == alpha;
  g.name = alpha == 1.0 ? "1/(1-z)" : "1/(1-z)^" + std::to_string(integer ? (long)alpha : alpha);
  g.radius = RadiusSpec::finite(1.0);
  g.radius_sum = SumAtRadius::diverges;
  g.class_k.kind = ClassKStatus::Kind::verified;
  g.class_k.checked_up_to = std::numeric_limits<long>::max();
  double lga = std::lgamma(alpha);
  g.coeff_log = [alpha, lga](long n) {
    return SignedLogValue::from_log(std::lgamma(n + alpha) - lga -
                                    std::lgamma(static_cast<double>(n) + 1.0));
  };
  g.support = [](long n) { return n >= 0; };
  g.next_support = [](long n) -> long { return n + 1; };
  if (integer) {
    long N = static_cast<long>(alpha);
    g.coeff_exact = [N](long n) { return BigRational(exact::negbinomial_coeff(N, n)); };
    g.exact_is_integer = true;
  }
  g.log_jet = [alpha](double t) {
    double omt = 1.0 - t;
    return Jet{SignedLogValue::from_double(-alpha * std::log1p(-t)),
               SignedLogValue::from_double(alpha / omt),
               SignedLogValue::from_double(alpha / (omt * omt)),
               SignedLogValue::from_double(2.0 * alpha / (omt * omt * omt))};
  };
  g.factorial_hook = [alpha, lga](int k, double t) {
    if (t == 0.0) return k == 0 ? SignedLogValue::one() : SignedLogValue::zero();
    double lg = std::lgamma(alpha + k) - lga + k * std::log(t) - k * std::log1p(-t);
    return SignedLogValue::from_log(lg);
  };
  return g;
}

GenFunction polynomial(std::vector<double> coeffs) {
  std::vector<BigRational> exact;
  exact.reserve(coeffs.size());
  for (double c : coeffs) exact.emplace_back(c);
  return polynomial_exact(std::move(exact));
}

GenFunction polynomial_exact(std::vector<BigRational> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  if (coeffs.empty()) throw std::invalid_argument("polynomial: no nonzero coefficients");
  long degree = static_cast<long>(coeffs.size()) - 1;

  auto shared = std::make_shared<std::vector<BigRational>>(std::move(coeffs));
  GenFunction g;
  g.name = "polynomial(degree " + std::to_string(degree) + ")";
  g.radius = RadiusSpec::infinite();
  g.poly_degree = degree;
  g.sparse_support = true;
  g.coeff_log = [shared, degree](long n) {
    if (n < 0 || n > degree) return SignedLogValue::zero();
    const BigRational& q = (*shared)[static_cast<size_t>(n)];
    int sign = q == 0 ? 0 : (q > 0 ? +1 : -1);
    return SignedLogValue{sign, to_lg(q)};
  };
  g.support = [shared, degree](long n) {
    return n >= 0 && n <= degree && (*shared)[static_cast<size_t>(n)] != 0;
  };
  g.next_support = [shared, degree](long n) -> long {
    for (long m = n + 1; m <= degree; ++m)
      if ((*shared)[static_cast<size_t>(m)] != 0) return m;
    return -1;
  };
  g.coeff_exact = [shared, degree](long n) -> BigRational {
    if (n < 0 || n > degree) return BigRational(0);
    return (*shared)[static_cast<size_t>(n)];
  };
  g.class_k = validate_class_k(g, degree);
  return g;
}

GenFunction binomial_poly(long N) {
  if (N < 1) throw std::invalid_argument("binomial_poly: N >= 1");
  std::vector<BigRational> coeffs;
  for (long n = 0; n <= N; ++n) coeffs.emplace_back(exact::binomial_coeff(N, n));
  GenFunction g = polynomial_exact(std::move(coeffs));
  g.name = "(1+z)^" + std::to_string(N);
  g.known_zeros.push_back({1.0, kPi});
  return g;
}

// ---------------------------------------------------------------------------
// Partition numbers in scaled double precision.
//
// The pentagonal recurrence is run on a rolling window of linear values
// p(n) / 2^E with a shared exponent E; the stored output is ln p(n).
// Terms below 1e-22 of the leading one are dropped (they cannot move
// the double result).
// ---------------------------------------------------------------------------

namespace {

class PartitionLogTable {
 public:
  double log_coeff(long n) {
    std::lock_guard<std::mutex> lock(mutex_);
    ensure(n);
    return lg_[static_cast<size_t>(n)];
  }

 private:
  static constexpr long kWindow = 1 << 18;  // covers pentagonal reach to n ~ 5e7

  void ensure(long n) {
    if (static_cast<long>(lg_.size()) > n) return;
    if (lg_.empty()) {
      lg_.push_back(0.0);  // p(0) = 1
      window_.assign(kWindow, 0.0);
      window_[0] = 1.0;
      scale_ = 0.0;
    }
    long target = std::max<long>(n, static_cast<long>(lg_.size()) * 2);
    for (long m = static_cast<long>(lg_.size()); m <= target; ++m) step(m);
  }

  void step(long m) {
    double lead = window_[static_cast<size_t>((m - 1) % kWindow)];
    double floor_at = lead * 1e-22;
    double acc = 0.0;
    for (long j = 1;; ++j) {
      long g1 = j * (3 * j - 1) / 2;
      if (g1 > m || m - g1 <= m - kWindow) break;
      double t1 = window_[static_cast<size_t>((m - g1) % kWindow)];
      long g2 = j * (3 * j + 1) / 2;
      double t2 = (g2 <= m && m - g2 > m - kWindow)
                      ? window_[static_cast<size_t>((m - g2) % kWindow)]
                      : 0.0;
      double pair = t1 + t2;
      if (j % 2 == 1)
        acc += pair;
      else
        acc -= pair;
      if (t1 < floor_at) break;
    }
    window_[static_cast<size_t>(m % kWindow)] = acc;
    lg_.push_back(std::log(acc) + scale_);
    if (acc > 1e250) rescale();
  }

  void rescale() {
    for (double& w : window_) w *= 1e-200;
    scale_ += std::log(1e200);
  }

  std::vector<double> lg_;
  std::vector<double> window_;
  double scale_ = 0.0;
  std::mutex mutex_;
};

PartitionLogTable& partition_table() {
  static PartitionLogTable table;
  return table;
}

// ln P(t) and derivatives. Direct factor sums for small t; for t close
// to 1 the Dedekind-eta modular transform evaluates the product with a
// remainder below machine precision.
Jet partition_log_jet(double t) {
  if (t <= 0.0 || t >= 1.0) throw std::domain_error("partition: t must lie in (0,1)");
  Jet T = Jet::variable(t);
  double u = -std::log(t);
  if (u >= 1.5) {
    // ln P = sum_k -ln(1 - t^k); factors decay like t^k.
    Jet sum = Jet::constant(0.0);
    long K = static_cast<long>(std::ceil(50.0 / u)) + 8;
    for (long k = 1; k <= K; ++k) {
      Jet tk = jet_pow(T, static_cast<double>(k));
      sum = sum - jet_log(Jet::constant(1.0) - tk);
    }
    return sum;
  }
  // u small: ln P(e^-u) = pi^2/(6u) + (1/2) ln(u/2pi) - u/24 + ln P(e^-v),
  // v = 4 pi^2 / u.
  Jet U = -jet_log(T);
  Jet main = jet_scale(SignedLogValue::from_double(kPi * kPi / 6.0), jet_inv(U)) +
             jet_scale(SignedLogValue::from_double(0.5), jet_log(U)) +
             Jet::constant(-0.5 * std::log(2.0 * kPi)) +
             jet_scale(SignedLogValue::from_double(-1.0 / 24.0), U);
  Jet V = jet_scale(SignedLogValue::from_double(4.0 * kPi * kPi), jet_inv(U));
  double v = 4.0 * kPi * kPi / u;
  Jet corr = Jet::constant(0.0);
  long terms = v > 800.0 ? 0 : 3;
  for (long k = 1; k <= terms; ++k) {
    Jet ev = jet_exp(jet_scale(SignedLogValue::from_double(-static_cast<double>(k)), V));
    corr = corr - jet_log(Jet::constant(1.0) - ev);
  }
  return main + corr;
}

}  // namespace

GenFunction partition() {
  GenFunction g;
  g.name = "partition";
  g.radius = RadiusSpec::finite(1.0);
  g.radius_sum = SumAtRadius::diverges;
  g.class_k.kind = ClassKStatus::Kind::verified;
  g.class_k.checked_up_to = std::numeric_limits<long>::max();
  g.coeff_log = [](long n) {
    if (n < 0) return SignedLogValue::zero();
    return SignedLogValue::from_log(partition_table().log_coeff(n));
  };
  g.support = [](long n) { return n >= 0; };
  g.next_support = [](long n) -> long { return n + 1; };
  g.coeff_exact = [](long n) -> BigRational {
    if (n > 100000) throw std::invalid_argument("partition exact channel capped at n=100000");
    return BigRational(exact::partition_count(n));
  };
  g.exact_is_integer = true;
  g.log_jet = partition_log_jet;
  return g;
}

// ---------------------------------------------------------------------------
// Bell: coefficients a_n = B_n / n! via a_{n+1} = (1/(n+1)) sum_j a_{n-j}/j!.
// ---------------------------------------------------------------------------

namespace {

class BellLogTable {
 public:
  double log_coeff(long n) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (lg_.empty()) lg_ = {0.0, 0.0};  // a_0 = a_1 = 1
    while (static_cast<long>(lg_.size()) <= n) {
      long m = static_cast<long>(lg_.size()) - 1;  // computing a_{m+1}
      LogAccumulator acc;
      double best = kNegInf;
      for (long j = 0; j <= m; ++j) {
        double term = lg_[static_cast<size_t>(m - j)] - std::lgamma(j + 1.0);
        acc.add_log(term);
        best = std::max(best, term);
        if (term < best - 60.0) break;
      }
      lg_.push_back(acc.total().lg - std::log(static_cast<double>(m) + 1.0));
    }
    return lg_[static_cast<size_t>(n)];
  }

 private:
  std::vector<double> lg_;
  std::mutex mutex_;
};

BellLogTable& bell_table() {
  static BellLogTable table;
  return table;
}

}  // namespace

GenFunction bell() {
  GenFunction g;
  g.name = "bell";
  g.radius = RadiusSpec::infinite();
  g.class_k.kind = ClassKStatus::Kind::verified;
  g.class_k.checked_up_to = std::numeric_limits<long>::max();
  g.coeff_log = [](long n) {
    if (n < 0) return SignedLogValue::zero();
    return SignedLogValue::from_log(bell_table().log_coeff(n));
  };
  g.support = [](long n) { return n >= 0; };
  g.next_support = [](long n) -> long { return n + 1; };
  g.coeff_exact = [](long n) -> BigRational {
    if (n > 2000) throw std::invalid_argument("bell exact channel capped at n=2000");
    return BigRational(exact::bell_number(n), exact::factorial(n));
  };
  g.log_jet = [](double t) {
    // ln f = e^t - 1; all log-derivatives equal e^t.
    SignedLogValue lf = t == 0.0 ? SignedLogValue::zero()
                                 : SignedLogValue::from_log(t + std::log1p(-std::exp(-t)));
    SignedLogValue et = SignedLogValue::from_log(t);
    return Jet{lf, et, et, et};
  };
  g.factorial_hook = [](int k, double t) {
    // f^(k)/f = sum_j S(k,j) e^{jt}  (Touchard), so E = t^k sum_j S(k,j) e^{jt}.
    if (t == 0.0) return k == 0 ? SignedLogValue::one() : SignedLogValue::zero();
    const StirlingTable& S = StirlingTable::shared(k);
    LogAccumulator acc;
    for (int j = 0; j <= k; ++j) {
      const BigInt& s = S(k, j);
      if (s == 0) continue;
      acc.add_log(to_lg(BigRational(s)) + j * t);
    }
    return SignedLogValue::from_log(acc.total().lg + k * std::log(t));
  };
  return g;
}

GenFunction hadamard_gap() {
  GenFunction g;
  g.name = "1+sum z^(2^k)";
  g.radius = RadiusSpec::finite(1.0);
  g.radius_sum = SumAtRadius::diverges;
  g.sparse_support = true;
  g.class_k.kind = ClassKStatus::Kind::verified;
  g.class_k.checked_up_to = std::numeric_limits<long>::max();
  auto is_support = [](long n) {
    if (n == 0) return true;
    return n >= 2 && (n & (n - 1)) == 0;  // powers of two, starting at 2
  };
  g.support = is_support;
  g.coeff_log = [is_support](long n) {
    return is_support(n) ? SignedLogValue::one() : SignedLogValue::zero();
  };
  g.next_support = [](long n) -> long {
    if (n < 2) return 2;
    long p = 2;
    while (p <= n) {
      if (p > (1L << 61)) return -1;
      p <<= 1;
    }
    return p;
  };
  g.coeff_exact = [is_support](long n) { return BigRational(is_support(n) ? 1 : 0); };
  g.exact_is_integer = true;
  return g;
}

GenFunction entire_gap_series(double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("entire_gap_series: rho must be > 0");
  // Support n_1 = 0, n_2 = 1, n_{k+1} = k n_k; coefficients n^(-n/rho).
  auto support_list = std::make_shared<std::vector<long>>();
  support_list->push_back(0);
  support_list->push_back(1);
  for (long k = 2;; ++k) {
    long nk = support_list->back() * k;
    if (nk > (1L << 56) / 4) break;
    support_list->push_back(nk);
  }
  GenFunction g;
  g.name = "gap-series(rho=" + std::to_string(rho) + ")";
  g.radius = RadiusSpec::infinite();
  g.sparse_support = true;
  g.class_k.kind = ClassKStatus::Kind::verified;
  g.class_k.checked_up_to = std::numeric_limits<long>::max();
  g.support = [support_list](long n) {
    return std::binary_search(support_list->begin(), support_list->end(), n);
  };
  g.coeff_log = [support_list, rho](long n) {
    if (!std::binary_search(support_list->begin(), support_list->end(), n))
      return SignedLogValue::zero();
    if (n <= 1) return SignedLogValue::one();
    return SignedLogValue::from_log(-(n / rho) * std::log(static_cast<double>(n)));
  };
  g.next_support = [support_list](long n) -> long {
    auto it = std::upper_bound(support_list->begin(), support_list->end(), n);
    return it == support_list->end() ? -1 : *it;
  };
  return g;
}

GenFunction log_perturbed() {
  GenFunction g;
  g.name = "1+log(1/(1-z))";
  g.radius = RadiusSpec::finite(1.0);
  g.radius_sum = SumAtRadius::diverges;
  g.class_k.kind = ClassKStatus::Kind::verified;
  g.class_k.checked_up_to = std::numeric_limits<long>::max();
  g.coeff_log = [](long n) {
    if (n == 0) return SignedLogValue::one();
    return SignedLogValue::from_log(-std::log(static_cast<double>(n)));
  };
  g.support = [](long n) { return n >= 0; };
  g.next_support = [](long n) -> long { return n + 1; };
  g.coeff_exact = [](long n) {
    return n == 0 ? BigRational(1) : BigRational(1, n);
  };
  g.log_jet = [](double t) {
    double omt = 1.0 - t;
    Jet L{SignedLogValue::from_double(-std::log1p(-t)),
          SignedLogValue::from_double(1.0 / omt),
          SignedLogValue::from_double(1.0 / (omt * omt)),
          SignedLogValue::from_double(2.0 / (omt * omt * omt))};
    return jet_log(Jet::constant(1.0) + L);
  };
  return g;
}

GenFunction polylog_perturbed(double eps, double s) {
  if (!(eps > 0.0) || !(s > 1.0))
    throw std::invalid_argument("polylog_perturbed: need eps > 0, s > 1");
  GenFunction g;
  g.name = "1+eps*polylog(s=" + std::to_string(s) + ")";
  g.radius = RadiusSpec::finite(1.0);
  g.radius_sum = s > 2.0 ? SumAtRadius::converges : SumAtRadius::diverges;
  g.class_k.kind = ClassKStatus::Kind::verified;
  g.class_k.checked_up_to = std::numeric_limits<long>::max();
  g.coeff_log = [eps, s](long n) {
    if (n == 0) return SignedLogValue::one();
    return SignedLogValue::from_log(std::log(eps) - s * std::log(static_cast<double>(n)));
  };
  g.support = [](long n) { return n >= 0; };
  g.next_support = [](long n) -> long { return n + 1; };
  return g;
}

}  // namespace builtins
}  // namespace khinchin
