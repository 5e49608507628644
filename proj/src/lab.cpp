#include "krank/lab.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "krank/errors.hpp"
#include "krank/expansion.hpp"
#include "krank/log_real.hpp"
#include "krank/parallel.hpp"
#include "krank/real.hpp"

namespace krank {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::int64_t kWindowMargin = 71;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void need_table(const PartitionTable& table, std::int64_t n) {
  if (n > table.max_n())
    throw BoundsError("partition table holds p(0.." + std::to_string(table.max_n()) +
                      "), scan needs " + std::to_string(n));
}

std::string triple_witness(const BigInt& a, const BigInt& b, const BigInt& c) {
  std::ostringstream out;
  out << "N(m-1)=" << a.get_str() << " N(m)=" << b.get_str() << " N(m+1)=" << c.get_str();
  return out.str();
}

struct RowFindings {
  std::int64_t lc_checked = 0;
  std::int64_t uni_checked = 0;
  std::vector<Violation> lc;
  std::vector<Violation> uni;
};

RowFindings check_row(int k, std::int64_t n, const PartitionTable& table, bool lc, bool uni) {
  RowFindings found;
  const KRankRow row = krank_row(k, n, table);
  if (lc && n >= k + kWindowMargin) {
    for (std::int64_t m = 0; m <= n - k - kWindowMargin; ++m) {
      const BigInt& b = row.count(m);
      const BigInt D = b * b - row.count(m - 1) * row.count(m + 1);
      ++found.lc_checked;
      if (sgn(D) <= 0)
        found.lc.push_back({k, m, n, triple_witness(row.count(m - 1), b, row.count(m + 1))});
    }
  }
  if (uni && n >= unimodality_threshold(k)) {
    for (std::int64_t m = 0; m < n - k; ++m) {
      ++found.uni_checked;
      if (row.count(m) < row.count(m + 1))
        found.uni.push_back({k, m, n,
                             "N(m)=" + row.count(m).get_str() + " N(m+1)=" + row.count(m + 1).get_str()});
    }
  }
  return found;
}

ScanReport empty_report(std::string statistic, int k, std::int64_t n_lo, std::int64_t n_hi,
                        std::string window) {
  ScanReport report;
  report.statistic = std::move(statistic);
  report.k_lo = report.k_hi = k;
  report.n_lo = n_lo;
  report.n_hi = n_hi;
  report.window = std::move(window);
  return report;
}

int majority_sign(const std::vector<int>& signs) {
  std::int64_t pos = 0, neg = 0;
  for (int s : signs) {
    if (s > 0) ++pos;
    if (s < 0) ++neg;
  }
  if (pos == 0 && neg == 0) return 0;
  return pos >= neg ? 1 : -1;
}

}  // namespace

void ScanReport::absorb(const ScanReport& other) {
  if (checked == 0 && violations.empty() && statistic.empty()) {
    *this = other;
    return;
  }
  k_lo = std::min(k_lo, other.k_lo);
  k_hi = std::max(k_hi, other.k_hi);
  n_lo = std::min(n_lo, other.n_lo);
  n_hi = std::max(n_hi, other.n_hi);
  checked += other.checked;
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  exceptions.insert(exceptions.end(), other.exceptions.begin(), other.exceptions.end());
  if (certified_sign != other.certified_sign) certified_sign = 0;
  for (const auto& note : other.notes)
    if (std::find(notes.begin(), notes.end(), note) == notes.end()) notes.push_back(note);
  elapsed_seconds += other.elapsed_seconds;
}

DiscriminantRecord discriminant_exact(int k, std::int64_t m, std::int64_t n,
                                      const PartitionTable& table) {
  DiscriminantRecord rec{k, m, n, 0, 0};
  const BigInt b = krank_count(k, m, n, table);
  rec.D = b * b - krank_count(k, m - 1, n, table) * krank_count(k, m + 1, n, table);
  rec.sign = sgn(rec.D);
  return rec;
}

std::int64_t unimodality_threshold(int k) {
  if (k < 1) throw DomainError("k must be >= 1");
  if (k == 1) return 44;
  return k + 1 + (k == 2 ? 36 : 0) + (k == 3 ? 6 : 0);
}

ConjectureScan conjecture_scan(int k, std::int64_t n_lo, std::int64_t n_hi,
                               const PartitionTable& table, int workers) {
  if (k < 1) throw DomainError("k must be >= 1");
  if (n_lo > n_hi) throw ConfigError("empty n range");
  need_table(table, n_hi);
  const auto start = Clock::now();
  const std::int64_t first = std::max<std::int64_t>(
      n_lo, std::min(k + kWindowMargin, unimodality_threshold(k)));
  const std::size_t count = first > n_hi ? 0 : static_cast<std::size_t>(n_hi - first + 1);
  const auto rows = parallel_map(count, workers, [&](std::size_t i) {
    return check_row(k, first + static_cast<std::int64_t>(i), table, true, true);
  });

  ConjectureScan out{
      empty_report("logconcave", k, n_lo, n_hi, "|m| <= n-k-71, n >= k+71"),
      empty_report("unimodal", k, n_lo, n_hi, "0 <= m < n-k, n >= n_u(k)")};
  for (const auto& r : rows) {
    out.logconcave.checked += r.lc_checked;
    out.unimodal.checked += r.uni_checked;
    out.logconcave.violations.insert(out.logconcave.violations.end(), r.lc.begin(), r.lc.end());
    out.unimodal.violations.insert(out.unimodal.violations.end(), r.uni.begin(), r.uni.end());
  }
  out.unimodal.notes.push_back("n_u(" + std::to_string(k) + ") = " +
                               std::to_string(unimodality_threshold(k)));
  const double elapsed = seconds_since(start);
  out.logconcave.elapsed_seconds = out.unimodal.elapsed_seconds = elapsed;
  return out;
}

ScanReport logconcavity_scan(int k, std::int64_t n_lo, std::int64_t n_hi,
                             const PartitionTable& table, int workers) {
  if (k < 1) throw DomainError("k must be >= 1");
  if (n_lo > n_hi) throw ConfigError("empty n range");
  need_table(table, n_hi);
  const auto start = Clock::now();
  const std::int64_t first = std::max<std::int64_t>(n_lo, k + kWindowMargin);
  const std::size_t count = first > n_hi ? 0 : static_cast<std::size_t>(n_hi - first + 1);
  const auto rows = parallel_map(count, workers, [&](std::size_t i) {
    return check_row(k, first + static_cast<std::int64_t>(i), table, true, false);
  });
  ScanReport report = empty_report("logconcave", k, n_lo, n_hi, "|m| <= n-k-71, n >= k+71");
  for (const auto& r : rows) {
    report.checked += r.lc_checked;
    report.violations.insert(report.violations.end(), r.lc.begin(), r.lc.end());
  }
  report.elapsed_seconds = seconds_since(start);
  return report;
}

ScanReport unimodality_scan(int k, std::int64_t n_lo, std::int64_t n_hi,
                            const PartitionTable& table, int workers) {
  if (k < 1) throw DomainError("k must be >= 1");
  if (n_lo > n_hi) throw ConfigError("empty n range");
  need_table(table, n_hi);
  const auto start = Clock::now();
  const std::int64_t first = std::max(n_lo, unimodality_threshold(k));
  const std::size_t count = first > n_hi ? 0 : static_cast<std::size_t>(n_hi - first + 1);
  const auto rows = parallel_map(count, workers, [&](std::size_t i) {
    return check_row(k, first + static_cast<std::int64_t>(i), table, false, true);
  });
  ScanReport report = empty_report("unimodal", k, n_lo, n_hi, "0 <= m < n-k, n >= n_u(k)");
  for (const auto& r : rows) {
    report.checked += r.uni_checked;
    report.violations.insert(report.violations.end(), r.uni.begin(), r.uni.end());
  }
  report.notes.push_back("n_u(" + std::to_string(k) + ") = " + std::to_string(unimodality_threshold(k)));
  report.elapsed_seconds = seconds_since(start);
  return report;
}

HTRecord ht_from_counts(int k, std::int64_t m, std::int64_t n, const BigInt& a, const BigInt& b,
                        const BigInt& c, const BigInt& d) {
  HTRecord rec;
  rec.k = k;
  rec.m = m;
  rec.n = n;
  rec.defined = (b != 0 && c != 0);
  // 4(B^2 - AC)(C^2 - BD) - (BC - AD)^2, then times B^2 C^2
  const BigInt core = 4 * (b * b - a * c) * (c * c - b * d) - (b * c - a * d) * (b * c - a * d);
  rec.numerator = core * b * b * c * c;
  rec.sign = sgn(rec.numerator);
  if (rec.defined) {
    const Real bc(BigInt(b * c), 256);
    rec.value = (Real(core, 256) / (bc * bc)).to_double();
  }
  return rec;
}

HTRecord ht_exact(int k, std::int64_t m, std::int64_t n, const PartitionTable& table) {
  return ht_from_counts(k, m, n, krank_count(k, m - 1, n, table), krank_count(k, m, n, table),
                        krank_count(k, m + 1, n, table), krank_count(k, m + 2, n, table));
}

SignChanges ht_sign_changes(int k, std::int64_t n, std::int64_t m_lo, std::int64_t m_hi,
                            const PartitionTable& table) {
  if (m_lo > m_hi) std::swap(m_lo, m_hi);
  if (m_lo < -n || m_hi > n) throw DomainError("HT window must lie within [-n, n]");
  const KRankRow row = krank_row(k, n, table);
  SignChanges out;
  int previous = 0;
  for (std::int64_t m = m_lo; m <= m_hi; ++m) {
    const HTRecord rec = ht_from_counts(k, m, n, row.count(m - 1), row.count(m), row.count(m + 1),
                                        row.count(m + 2));
    if (!rec.defined || rec.sign == 0) {
      ++out.skipped;
      continue;
    }
    if (previous != 0 && rec.sign != previous) {
      ++out.count;
      out.locations.push_back(m);
    }
    previous = rec.sign;
  }
  return out;
}

std::int64_t default_ht_window(std::int64_t n) {
  return static_cast<std::int64_t>(std::ceil(8.0 / asym_context(n).beta));
}

double delta2_log_exact(int k, std::int64_t m, std::int64_t n, const PartitionTable& table) {
  const BigInt a = krank_count(k, m - 1, n, table);
  const BigInt b = krank_count(k, m, n, table);
  const BigInt c = krank_count(k, m + 1, n, table);
  if (a <= 0 || b <= 0 || c <= 0)
    throw DomainError("-Delta^2 log N needs positive N at m-1, m, m+1 (m=" + std::to_string(m) +
                      ", n=" + std::to_string(n) + ")");
  // -log(AC/B^2) = -log1p(-(B^2 - AC)/B^2)
  const BigInt bb = b * b;
  const Rational x(BigInt(bb - a * c), bb);
  return (-log1p(-Real(x, 128))).to_double();
}

std::vector<int> pdiff_signs(std::int64_t l_lo, std::int64_t l_hi, const PartitionTable& table) {
  if (l_lo < 1) throw DomainError("p-difference scan needs l >= 1");
  if (l_lo > l_hi) throw ConfigError("empty l range");
  need_table(table, l_hi + 2);
  auto a = [&](std::int64_t l) { return BigInt(table.p(l + 1) - table.p(l)); };
  std::vector<int> signs;
  signs.reserve(static_cast<std::size_t>(l_hi - l_lo + 1));
  for (std::int64_t l = l_lo; l <= l_hi; ++l) {
    const BigInt al = a(l);
    signs.push_back(sgn(BigInt(al * al - a(l - 1) * a(l + 1))));
  }
  return signs;
}

ScanReport pdiff_logconcave(std::int64_t l_lo, std::int64_t l_hi, const PartitionTable& table) {
  const auto start = Clock::now();
  const std::vector<int> signs = pdiff_signs(l_lo, l_hi, table);
  ScanReport report;
  report.statistic = "pdiff";
  report.n_lo = l_lo;
  report.n_hi = l_hi;
  report.window = "l >= 71";
  report.checked = static_cast<std::int64_t>(signs.size());

  std::vector<int> in_window;
  for (std::int64_t l = std::max<std::int64_t>(l_lo, kWindowMargin); l <= l_hi; ++l)
    in_window.push_back(signs[static_cast<std::size_t>(l - l_lo)]);
  // Outside l >= 71 the reference is the log-concave orientation.
  report.certified_sign = in_window.empty() ? 1 : majority_sign(in_window);

  auto a = [&](std::int64_t l) { return BigInt(table.p(l + 1) - table.p(l)); };
  for (std::int64_t l = l_lo; l <= l_hi; ++l) {
    const int s = signs[static_cast<std::size_t>(l - l_lo)];
    if (s == report.certified_sign) continue;
    const BigInt al = a(l);
    Violation v{0, l, l,
                "a(l)^2 - a(l-1)a(l+1) = " + BigInt(al * al - a(l - 1) * a(l + 1)).get_str()};
    (l >= kWindowMargin ? report.violations : report.exceptions).push_back(std::move(v));
  }
  report.notes.push_back(
      "a(l) = p(l+1) - p(l); certified sign +1 means a(l)^2 > a(l-1)a(l+1) (log-concave)");
  report.elapsed_seconds = seconds_since(start);
  return report;
}

ScanReport edge_logconcavity(int k, std::int64_t n, const PartitionTable& table) {
  if (k < 1) throw DomainError("k must be >= 1");
  if (n < 142 + 2 * k) throw DomainError("edge window needs n >= 142 + 2k");
  need_table(table, n);
  const auto start = Clock::now();
  const std::int64_t lo = std::max<std::int64_t>(
      0, static_cast<std::int64_t>(std::ceil(static_cast<double>(n) / 2.0 - 2.0 * k + 2.0)));
  const std::int64_t hi = n - k - kWindowMargin;
  ScanReport report = empty_report("edge", k, n, n, "ceil(n/2-2k+2) <= |m| <= n-k-71");
  if (lo > hi) {
    report.notes.push_back("empty window");
    return report;
  }
  const KRankRow row = krank_row(k, n, table);
  std::vector<int> signs;
  for (std::int64_t m = lo; m <= hi; ++m) {
    const BigInt& b = row.count(m);
    signs.push_back(sgn(BigInt(b * b - row.count(m - 1) * row.count(m + 1))));
  }
  report.certified_sign = majority_sign(signs);
  for (std::int64_t m = lo; m <= hi; ++m) {
    ++report.checked;
    const BigInt& b = row.count(m);
    const int s = signs[static_cast<std::size_t>(m - lo)];
    if (s == 0 || s != report.certified_sign)
      report.violations.push_back({k, m, n, triple_witness(row.count(m - 1), b, row.count(m + 1))});
    const BigInt identity = table.p(n - m - k + 1) - table.p(n - m - k);
    if (identity != b)
      report.violations.push_back(
          {k, m, n, "N(m)=" + b.get_str() + " but p(n-m-k+1)-p(n-m-k)=" + identity.get_str()});
  }
  report.notes.push_back("window m in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  report.notes.push_back(
      "certified sign is the common sign of N(m)^2 - N(m-1)N(m+1) in the window");
  report.elapsed_seconds = seconds_since(start);
  return report;
}

std::vector<MonotonicityRow> monotonicity_table(int k, std::int64_t n, std::int64_t m_lo,
                                                std::int64_t m_hi, const PartitionTable& table) {
  if (n < 1) throw DomainError("monotonicity table needs n >= 1");
  if (m_lo > m_hi) std::swap(m_lo, m_hi);
  need_table(table, n + std::max(std::abs(m_lo), std::abs(m_hi)) + 1);
  const mpfr_prec_t bits = 128;
  const Real scale = Real(6.0 * static_cast<double>(n), bits) /
                     (Real::pi(bits) * Real::pi(bits) * Real(table.p(n), bits));
  std::vector<MonotonicityRow> rows;
  for (std::int64_t m = m_lo; m <= m_hi; ++m) {
    const std::int64_t shifted = n + std::abs(m);
    const BigInt diff = krank_count(k, m, shifted, table) - krank_count(k, m + 1, shifted, table);
    MonotonicityRow row;
    row.m = m;
    row.exact_ratio = (Real(diff, bits) * scale).to_double();
    row.rhs = mono_rhs(m, n);
    row.relative_gap = std::abs(row.exact_ratio / row.rhs - 1.0);
    rows.push_back(row);
  }
  return rows;
}

std::vector<LcRow> compare_lc_table(int k, std::int64_t n, std::int64_t m_lo, std::int64_t m_hi,
                                    const PartitionTable& table) {
  if (m_lo > m_hi) std::swap(m_lo, m_hi);
  need_table(table, n);
  const KRankRow row = krank_row(k, n, table);
  std::vector<LcRow> rows;
  for (std::int64_t m = m_lo; m <= m_hi; ++m) {
    LcRow r;
    r.m = m;
    const BigInt& a = row.count(m - 1);
    const BigInt& b = row.count(m);
    const BigInt& c = row.count(m + 1);
    if (a > 0 && b > 0 && c > 0 && n - std::abs(m) >= 1) {
      const BigInt bb = b * b;
      r.ln = (-log1p(-Real(Rational(BigInt(bb - a * c), bb), 128))).to_double();
      r.aln = lc_rhs(m, n, LcVariant::kCombined);
      r.relative_gap = std::abs(r.ln / r.aln - 1.0);
      r.defined = true;
    }
    rows.push_back(r);
  }
  return rows;
}

double normalized_discriminant(int k, std::int64_t m, std::int64_t n, const PartitionTable& table) {
  const DiscriminantRecord rec = discriminant_exact(k, m, n, table);
  if (rec.sign == 0) return 0.0;
  const double log_d = static_cast<double>(log_abs_bigint(rec.D));
  return rec.sign * std::exp(log_d - log_disc_normalizer(n));
}

}  // namespace krank
