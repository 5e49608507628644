#pragma once

// Exact-integer checks of log-concavity, unimodality and the higher-order
// Turan expression for k-rank rows, plus exact-vs-asymptotic tables.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "krank/exact_core.hpp"

namespace krank {

struct DiscriminantRecord {
  int k = 1;
  std::int64_t m = 0;
  std::int64_t n = 0;
  BigInt D;  // N(m)^2 - N(m-1) N(m+1)
  int sign = 0;
};

struct HTRecord {
  int k = 1;
  std::int64_t m = 0;
  std::int64_t n = 0;
  // HT_k(m,n) * N(m)^4 N(m+1)^4; zero when either count vanishes
  BigInt numerator;
  int sign = 0;
  bool defined = false;  // N(m) and N(m+1) both nonzero
  std::optional<double> value;
};

struct Violation {
  int k = 0;
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::string witness;  // exact integers that break the inequality
};

struct ScanReport {
  std::string statistic;
  int k_lo = 0, k_hi = 0;
  std::int64_t n_lo = 0, n_hi = 0;
  std::string window;
  std::int64_t checked = 0;
  std::vector<Violation> violations;
  // Informational findings outside the claimed window (e.g. small-l
  // exceptions in the p-difference scan).
  std::vector<Violation> exceptions;
  int certified_sign = 0;  // uniform sign found, for sign-law scans
  std::vector<std::string> notes;
  double elapsed_seconds = 0.0;  // excluded from serialized output

  bool ok() const { return violations.empty(); }
  /// Merge another report of the same statistic (k ranges are widened).
  void absorb(const ScanReport& other);
};

DiscriminantRecord discriminant_exact(int k, std::int64_t m, std::int64_t n,
                                      const PartitionTable& table);

/// n_u(k) = k + 1 + 36 [k = 2] + 6 [k = 3]; 44 for k = 1.
std::int64_t unimodality_threshold(int k);

/// Strict N^2 > N(m-1)N(m+1) for |m| <= n-k-71, n >= k+71.
ScanReport logconcavity_scan(int k, std::int64_t n_lo, std::int64_t n_hi,
                             const PartitionTable& table, int workers = 1);

/// N(m) >= N(m+1) for 0 <= m < n-k, n >= n_u(k).
ScanReport unimodality_scan(int k, std::int64_t n_lo, std::int64_t n_hi,
                            const PartitionTable& table, int workers = 1);

/// Both scans from one pass over the rows.
struct ConjectureScan {
  ScanReport logconcave;
  ScanReport unimodal;
};
ConjectureScan conjecture_scan(int k, std::int64_t n_lo, std::int64_t n_hi,
                               const PartitionTable& table, int workers = 1);

HTRecord ht_exact(int k, std::int64_t m, std::int64_t n, const PartitionTable& table);
HTRecord ht_from_counts(int k, std::int64_t m, std::int64_t n, const BigInt& a, const BigInt& b,
                        const BigInt& c, const BigInt& d);

struct SignChanges {
  int count = 0;
  std::vector<std::int64_t> locations;  // m where the sign differs from the previous defined one
  std::int64_t skipped = 0;             // zero or undefined points
};

/// Sign alternations of HT_k(m,n) over m in [m_lo, m_hi] (either order).
SignChanges ht_sign_changes(int k, std::int64_t n, std::int64_t m_lo, std::int64_t m_hi,
                            const PartitionTable& table);

/// Default HT window half-width: ceil(8 / beta_n) (312 at n = 2500). The
/// outer sign changes of HT_1(m, 2500) sit at |m| = 257.
std::int64_t default_ht_window(std::int64_t n);

/// -Delta_m^2 log N_k(m,n), from exact integers at 128 bits.
double delta2_log_exact(int k, std::int64_t m, std::int64_t n, const PartitionTable& table);

/// Sign of a_l^2 - a_{l-1} a_{l+1}, a_l = p(l+1) - p(l), for l in [l_lo, l_hi].
std::vector<int> pdiff_signs(std::int64_t l_lo, std::int64_t l_hi, const PartitionTable& table);

/// Certifies one sign for l >= 71 and lists out-of-window exceptions.
ScanReport pdiff_logconcave(std::int64_t l_lo, std::int64_t l_hi, const PartitionTable& table);

/// Edge window ceil(n/2 - 2k + 2) <= |m| <= n-k-71 for n >= 142 + 2k.
ScanReport edge_logconcavity(int k, std::int64_t n, const PartitionTable& table);

struct MonotonicityRow {
  std::int64_t m = 0;
  double exact_ratio = 0.0;
  double rhs = 0.0;
  double relative_gap = 0.0;
};

/// exact_ratio = [N(m, n+|m|) - N(m+1, n+|m|)] / (pi^2 p(n) / (6n)).
std::vector<MonotonicityRow> monotonicity_table(int k, std::int64_t n, std::int64_t m_lo,
                                                std::int64_t m_hi, const PartitionTable& table);

struct LcRow {
  std::int64_t m = 0;
  bool defined = false;
  double ln = 0.0;
  double aln = 0.0;
  double relative_gap = 0.0;
};

/// LN = delta2_log_exact against aLN = lc_rhs(combined); undefined rows flagged.
std::vector<LcRow> compare_lc_table(int k, std::int64_t n, std::int64_t m_lo, std::int64_t m_hi,
                                    const PartitionTable& table);

/// Exact L_k(m,n): discriminant over 3 beta^6 e^{4 Lambda} / (2 pi^2)^2.
double normalized_discriminant(int k, std::int64_t m, std::int64_t n, const PartitionTable& table);

}  // namespace krank
