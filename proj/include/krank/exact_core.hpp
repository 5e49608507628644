#pragma once

// Exact partition counts p(n) and Garvan k-rank counts N_k(m, n).
//
// Three independent routes are provided:
//   * krank_count / krank_row: finite alternating sum over shifted p(n),
//   * qseries_row_oracle: truncated power-series product of the k-rank
//     theta series with 1/(q;q)_inf,
//   * enumerate_stats_oracle: brute-force enumeration of partitions (k = 1, 2).
//
// Convention: the q^0 coefficient is the empty partition, N_k(m, 0) = [m == 0]
// for every k.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace krank {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Memoized p(0..max_n). Immutable after construction.
class PartitionTable {
 public:
  static constexpr std::int64_t kMaxSize = 10'000'000;

  /// Throws ConfigError for max_n < 0 or max_n > kMaxSize.
  explicit PartitionTable(std::int64_t max_n);

  std::int64_t max_n() const { return static_cast<std::int64_t>(values_.size()) - 1; }

  /// p(n); zero for negative n, BoundsError above max_n.
  const BigInt& p(std::int64_t n) const;

  std::span<const BigInt> values() const { return values_; }

 private:
  std::vector<BigInt> values_;
};

PartitionTable build_partition_table(std::int64_t max_n);

/// Exact N_k(m, n) for fixed (k, n); stores m >= 0 and mirrors.
class KRankRow {
 public:
  KRankRow(int k, std::int64_t n, std::vector<BigInt> nonnegative);

  int k() const { return k_; }
  std::int64_t n() const { return n_; }

  /// N_k(m, n); zero outside [-n, n].
  const BigInt& count(std::int64_t m) const;

  /// Counts for m = 0..n.
  std::span<const BigInt> nonnegative() const { return half_; }

  /// Sum over all m in [-n, n].
  BigInt total() const;

 private:
  int k_;
  std::int64_t n_;
  std::vector<BigInt> half_;
};

/// Exact N_k(m, n) from the finite p-difference sum
///   sum_{l>=1} (-1)^{l-1} [p(n - g(l) - |m| l) - p(n - g(l) - (|m|+1) l)],
///   g(l) = ((2k-1) l^2 - l) / 2.
BigInt krank_count(int k, std::int64_t m, std::int64_t n, const PartitionTable& table);

KRankRow krank_row(int k, std::int64_t n, const PartitionTable& table);

/// First N+1 coefficients of the k-rank generating function for fixed m.
struct SeriesRow {
  int k = 1;
  std::int64_t m = 0;
  std::vector<BigInt> coeffs;
};

/// Direct power-series product; does not touch PartitionTable.
SeriesRow qseries_row_oracle(int k, std::int64_t m, std::int64_t max_n);

/// A partition as a weakly decreasing list of positive parts.
class PartitionObject {
 public:
  explicit PartitionObject(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int size() const;
  int largest() const { return parts_.empty() ? 0 : parts_.front(); }
  int count() const { return static_cast<int>(parts_.size()); }
  int ones() const;
  /// Number of parts strictly larger than ones().
  int parts_exceeding_ones() const;

  int rank() const { return largest() - count(); }
  int crank() const;

 private:
  std::vector<int> parts_;
};

enum class Statistic { kCrank, kRank };

/// Histogram of rank or crank over all partitions of n (n <= 40), with the
/// conventional n = 1 crank values {-1: 1, 0: -1, 1: 1}.
std::map<int, std::int64_t> enumerate_stats_oracle(int n, Statistic statistic);

/// Calls visit(parts) for every partition of n in reverse lexicographic order.
template <typename Visitor>
void for_each_partition(int n, Visitor&& visit) {
  std::vector<int> parts;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      visit(static_cast<const std::vector<int>&>(parts));
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      parts.push_back(part);
      self(self, remaining - part, part);
      parts.pop_back();
    }
  };
  rec(rec, n, n);
}

}  // namespace krank
