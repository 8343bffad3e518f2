#include "khinchin/exact.hpp"

#include <mutex>
#include <stdexcept>

namespace khinchin {
namespace exact {

namespace {
std::mutex table_mutex;
}

BigInt partition_count(long n) {
  if (n < 0) throw std::invalid_argument("partition_count: n must be >= 0");
  static std::vector<BigInt> table = {1};  // p(0) = 1
  std::lock_guard<std::mutex> lock(table_mutex);
  while (static_cast<long>(table.size()) <= n) {
    long m = static_cast<long>(table.size());
    BigInt acc = 0;
    // p(m) = sum_{j>=1} (-1)^{j-1} [ p(m - j(3j-1)/2) + p(m - j(3j+1)/2) ]
    for (long j = 1;; ++j) {
      long g1 = j * (3 * j - 1) / 2;
      long g2 = j * (3 * j + 1) / 2;
      if (g1 > m) break;
      BigInt term = table[m - g1];
      if (g2 <= m) term += table[m - g2];
      if (j % 2 == 1)
        acc += term;
      else
        acc -= term;
    }
    table.push_back(acc);
  }
  return table[n];
}

BigInt bell_number(long n) {
  if (n < 0) throw std::invalid_argument("bell_number: n must be >= 0");
  static std::vector<BigInt> bells = {1};  // B(0) = 1
  static std::vector<BigInt> row = {1};    // last computed triangle row
  std::lock_guard<std::mutex> lock(table_mutex);
  while (static_cast<long>(bells.size()) <= n) {
    std::vector<BigInt> next(row.size() + 1);
    next[0] = row.back();
    for (size_t i = 0; i < row.size(); ++i) next[i + 1] = next[i] + row[i];
    row = std::move(next);
    bells.push_back(row[0]);
  }
  return bells[n];
}

BigInt binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

BigInt factorial(long n) {
  BigInt r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt binomial_coeff(long N, long n) { return binomial(N, n); }

BigInt negbinomial_coeff(long N, long n) {
  if (n < 0) return 0;
  return binomial(n + N - 1, n);
}

BigRational exponential_coeff(long n) {
  return BigRational(1, factorial(n));
}

}  // namespace exact

StirlingTable::StirlingTable(int max_k) {
  rows_.resize(static_cast<size_t>(max_k) + 1);
  rows_[0] = {1};
  for (int k = 1; k <= max_k; ++k) {
    auto& row = rows_[static_cast<size_t>(k)];
    row.assign(static_cast<size_t>(k) + 1, 0);
    const auto& prev = rows_[static_cast<size_t>(k) - 1];
    for (int j = 1; j <= k; ++j) {
      BigInt v = prev[static_cast<size_t>(j) - 1];
      if (j < k) v += BigInt(j) * prev[static_cast<size_t>(j)];
      row[static_cast<size_t>(j)] = v;
    }
  }
}

const BigInt& StirlingTable::operator()(int k, int j) const {
  static const BigInt zero = 0;
  if (k < 0 || k > max_k() || j < 0 || j > k) return zero;
  return rows_[static_cast<size_t>(k)][static_cast<size_t>(j)];
}

const StirlingTable& StirlingTable::shared(int at_least_k) {
  static const StirlingTable table(64);  // built once, read-only afterwards
  if (at_least_k > table.max_k())
    throw std::invalid_argument("StirlingTable::shared: k exceeds shared table size");
  return table;
}

}  // namespace khinchin
