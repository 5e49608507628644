#include "krank/exact_core.hpp"

#include <algorithm>
#include <string>

#include "krank/errors.hpp"

namespace krank {

namespace {

const BigInt& zero_bigint() {
  static const BigInt zero = 0;
  return zero;
}

void check_k(int k) {
  if (k < 1) throw DomainError("k must be >= 1, got " + std::to_string(k));
}

// g_k(l) = ((2k-1) l^2 - l) / 2
std::int64_t theta_exponent(int k, std::int64_t l) { return ((2 * k - 1) * l * l - l) / 2; }

}  // namespace

PartitionTable::PartitionTable(std::int64_t max_n) {
  if (max_n < 0) throw ConfigError("partition table size must be >= 0");
  if (max_n > kMaxSize)
    throw ConfigError("partition table size " + std::to_string(max_n) + " exceeds limit " +
                      std::to_string(kMaxSize));

  values_.resize(static_cast<std::size_t>(max_n) + 1);
  values_[0] = 1;
  // Euler: p(n) = sum_{j>=1} (-1)^{j+1} [p(n - j(3j-1)/2) + p(n - j(3j+1)/2)]
  for (std::int64_t n = 1; n <= max_n; ++n) {
    BigInt acc = 0;
    for (std::int64_t j = 1;; ++j) {
      const std::int64_t g1 = j * (3 * j - 1) / 2;
      if (g1 > n) break;
      const std::int64_t g2 = g1 + j;
      if (j % 2 == 1) {
        acc += values_[n - g1];
        if (g2 <= n) acc += values_[n - g2];
      } else {
        acc -= values_[n - g1];
        if (g2 <= n) acc -= values_[n - g2];
      }
    }
    values_[n] = std::move(acc);
  }
}

const BigInt& PartitionTable::p(std::int64_t n) const {
  if (n < 0) return zero_bigint();
  if (n > max_n())
    throw BoundsError("p(" + std::to_string(n) + ") requested but table holds p(0.." +
                      std::to_string(max_n()) + ")");
  return values_[static_cast<std::size_t>(n)];
}

PartitionTable build_partition_table(std::int64_t max_n) { return PartitionTable(max_n); }

KRankRow::KRankRow(int k, std::int64_t n, std::vector<BigInt> nonnegative)
    : k_(k), n_(n), half_(std::move(nonnegative)) {
  if (static_cast<std::int64_t>(half_.size()) != n + 1)
    throw DomainError("KRankRow needs exactly n+1 nonnegative entries");
}

const BigInt& KRankRow::count(std::int64_t m) const {
  const std::int64_t a = m < 0 ? -m : m;
  if (a > n_) return zero_bigint();
  return half_[static_cast<std::size_t>(a)];
}

BigInt KRankRow::total() const {
  BigInt sum = half_.empty() ? BigInt(0) : half_[0];
  for (std::size_t i = 1; i < half_.size(); ++i) sum += 2 * half_[i];
  return sum;
}

BigInt krank_count(int k, std::int64_t m, std::int64_t n, const PartitionTable& table) {
  check_k(k);
  if (n < 0) return 0;
  if (n > table.max_n())
    throw BoundsError("N_k(m," + std::to_string(n) + ") needs p up to " + std::to_string(n) +
                      ", table holds " + std::to_string(table.max_n()));
  const std::int64_t a = m < 0 ? -m : m;
  if (n == 0) return a == 0 ? 1 : 0;
  if (a > n) return 0;

  BigInt sum = 0;
  for (std::int64_t l = 1;; ++l) {
    const std::int64_t base = n - theta_exponent(k, l) - a * l;
    if (base < 0) break;
    if (l % 2 == 1) {
      sum += table.p(base);
      sum -= table.p(base - l);
    } else {
      sum -= table.p(base);
      sum += table.p(base - l);
    }
  }
  return sum;
}

KRankRow krank_row(int k, std::int64_t n, const PartitionTable& table) {
  check_k(k);
  if (n < 0) throw DomainError("krank_row needs n >= 0");
  std::vector<BigInt> half(static_cast<std::size_t>(n) + 1);
  for (std::int64_t m = 0; m <= n; ++m) half[static_cast<std::size_t>(m)] = krank_count(k, m, n, table);
  return KRankRow(k, n, std::move(half));
}

SeriesRow qseries_row_oracle(int k, std::int64_t m, std::int64_t max_n) {
  check_k(k);
  if (max_n < 0) throw DomainError("series length must be >= 0");
  const std::size_t len = static_cast<std::size_t>(max_n) + 1;
  const std::int64_t a = m < 0 ? -m : m;

  // 1/(q;q)_inf as a product of geometric series.
  std::vector<BigInt> inverse_euler(len, 0);
  inverse_euler[0] = 1;
  for (std::size_t part = 1; part < len; ++part)
    for (std::size_t i = part; i < len; ++i) inverse_euler[i] += inverse_euler[i - part];

  // sum_{l>=1} (-1)^{l-1} q^{g(l) + |m| l} (1 - q^l), truncated.
  std::vector<BigInt> theta(len, 0);
  for (std::int64_t l = 1;; ++l) {
    const std::int64_t e = theta_exponent(k, l) + a * l;
    if (e > max_n) break;
    const int sign = (l % 2 == 1) ? 1 : -1;
    theta[static_cast<std::size_t>(e)] += sign;
    if (e + l <= max_n) theta[static_cast<std::size_t>(e + l)] -= sign;
  }

  SeriesRow row{k, m, std::vector<BigInt>(len, 0)};
  for (std::size_t i = 0; i < len; ++i) {
    if (theta[i] == 0) continue;
    for (std::size_t j = 0; i + j < len; ++j) row.coeffs[i + j] += theta[i] * inverse_euler[j];
  }
  row.coeffs[0] = (a == 0) ? 1 : 0;
  return row;
}

PartitionObject::PartitionObject(std::vector<int> parts) : parts_(std::move(parts)) {
  if (!std::is_sorted(parts_.begin(), parts_.end(), std::greater<>()))
    throw DomainError("partition parts must be weakly decreasing");
  if (!parts_.empty() && parts_.back() <= 0) throw DomainError("partition parts must be positive");
}

int PartitionObject::size() const {
  int total = 0;
  for (int part : parts_) total += part;
  return total;
}

int PartitionObject::ones() const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), 1));
}

int PartitionObject::parts_exceeding_ones() const {
  const int w = ones();
  return static_cast<int>(
      std::count_if(parts_.begin(), parts_.end(), [w](int part) { return part > w; }));
}

int PartitionObject::crank() const {
  const int w = ones();
  if (w == 0) return largest();
  return parts_exceeding_ones() - w;
}

std::map<int, std::int64_t> enumerate_stats_oracle(int n, Statistic statistic) {
  constexpr int kBudget = 40;
  if (n < 0) throw DomainError("enumeration needs n >= 0");
  if (n > kBudget)
    throw BudgetError("enumeration limited to n <= " + std::to_string(kBudget) + ", got " +
                      std::to_string(n));
  if (statistic == Statistic::kCrank && n == 1) return {{-1, 1}, {0, -1}, {1, 1}};

  std::map<int, std::int64_t> histogram;
  for_each_partition(n, [&](const std::vector<int>& parts) {
    const PartitionObject lambda(parts);
    const int value = statistic == Statistic::kRank ? lambda.rank() : lambda.crank();
    ++histogram[value];
  });
  return histogram;
}

}  // namespace krank
