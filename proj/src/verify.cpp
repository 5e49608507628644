#include "krank/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "krank/bessel.hpp"
#include "krank/comparators.hpp"
#include "krank/exact_core.hpp"
#include "krank/expansion.hpp"
#include "krank/lab.hpp"

namespace krank {

namespace {

using Clock = std::chrono::steady_clock;

const PartitionTable& table() {
  static const PartitionTable t(10'000);
  return t;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Outcome {
  bool passed = true;
  std::string detail;
};

Outcome fail(std::string detail) { return {false, std::move(detail)}; }

// C1
Outcome oracle_triple() {
  for (int k = 1; k <= 2; ++k)
    for (int n = 0; n <= 30; ++n) {
      const KRankRow row = krank_row(k, n, table());
      const auto hist = enumerate_stats_oracle(n, k == 1 ? Statistic::kCrank : Statistic::kRank);
      for (int m = -n; m <= n; ++m) {
        const SeriesRow series = qseries_row_oracle(k, m, n);
        const auto it = hist.find(m);
        const BigInt enumerated = it == hist.end() ? 0 : it->second;
        if (row.count(m) != series.coeffs[n] || row.count(m) != enumerated)
          return fail("k=" + std::to_string(k) + " m=" + std::to_string(m) + " n=" + std::to_string(n) +
                      ": p-sum " + row.count(m).get_str() + ", series " + series.coeffs[n].get_str() +
                      ", enumeration " + enumerated.get_str());
      }
    }
  return {true, "k in {1,2}, n <= 30, all m agree"};
}

// C2
Outcome oracle_pair() {
  constexpr int kN = 60;
  for (int k = 3; k <= 6; ++k)
    for (int m = -kN; m <= kN; ++m) {
      const SeriesRow series = qseries_row_oracle(k, m, kN);
      for (int n = 0; n <= kN; ++n)
        if (krank_count(k, m, n, table()) != series.coeffs[n])
          return fail("k=" + std::to_string(k) + " m=" + std::to_string(m) + " n=" + std::to_string(n));
    }
  return {true, "k in 3..6, n <= 60, all m agree"};
}

// C3
Outcome sum_identity() {
  for (int k = 1; k <= 2; ++k)
    for (int n = 0; n <= 500; ++n)
      if (krank_row(k, n, table()).total() != table().p(n))
        return fail("k=" + std::to_string(k) + " n=" + std::to_string(n));
  return {true, "sum_m N_k(m,n) = p(n), k in {1,2}, n <= 500"};
}

// C4
Outcome special_values() {
  const BigInt a = krank_count(1, 0, 1, table()), b = krank_count(1, 1, 1, table()),
               c = krank_count(1, -1, 1, table());
  const std::string d = "N_1(0,1)=" + a.get_str() + " N_1(1,1)=" + b.get_str() + " N_1(-1,1)=" + c.get_str();
  return {a == -1 && b == 1 && c == 1, d};
}

// C5, C6
Outcome conjecture(bool logconcave, std::int64_t n_hi, int workers) {
  std::int64_t checked = 0;
  std::size_t violations = 0;
  std::string first;
  for (int k = logconcave ? 1 : 2; k <= 10; ++k) {
    const std::int64_t n_lo = logconcave ? k + 71 : unimodality_threshold(k);
    const ScanReport r = logconcave ? logconcavity_scan(k, n_lo, n_hi, table(), workers)
                                    : unimodality_scan(k, n_lo, n_hi, table(), workers);
    checked += r.checked;
    violations += r.violations.size();
    if (first.empty() && !r.violations.empty()) {
      const auto& v = r.violations.front();
      first = " first at k=" + std::to_string(v.k) + " m=" + std::to_string(v.m) + " n=" + std::to_string(v.n);
    }
  }
  return {violations == 0, std::to_string(checked) + " checks up to n=" + std::to_string(n_hi) + ", " +
                               std::to_string(violations) + " violations" + first};
}

// C7
Outcome figure_ht() {
  const SignChanges narrow = ht_sign_changes(1, 2500, -250, 250, table());
  const std::int64_t w = default_ht_window(2500);
  const SignChanges wide = ht_sign_changes(1, 2500, -w, w, table());
  std::string at;
  for (auto m : wide.locations) at += (at.empty() ? "" : ",") + std::to_string(m);
  return {wide.count == 4, std::to_string(wide.count) + " sign changes on |m| <= " + std::to_string(w) + " at {" +
                               at + "}; " + std::to_string(narrow.count) + " on |m| <= 250"};
}

// C8
Outcome figure_lc() {
  double worst = 0.0;
  std::int64_t at = 0;
  for (const LcRow& row : compare_lc_table(2, 2500, -200, 200, table())) {
    if (!row.defined) return fail("undefined row at m=" + std::to_string(row.m));
    if (row.relative_gap > worst) worst = row.relative_gap, at = row.m;
  }
  return {worst <= 0.15, "max |LN/aLN - 1| = " + fmt("%.4f", worst) + " at m=" + std::to_string(at) + " (<= 0.15)"};
}

// C9
Outcome sech_regime() {
  constexpr std::int64_t n = 10'000;
  const Real p(table().p(n), 128);
  double worst = 0.0;
  for (int k = 1; k <= 3; ++k)
    for (std::int64_t m = -100; m <= 100; ++m) {
      const double ratio = (Real(krank_count(k, m, n, table()), 128) / p).to_double() / sech_ratio(m, n);
      const double c = std::abs(ratio - 1) * std::pow(static_cast<double>(n), 1.5) / static_cast<double>(n + m * m);
      worst = std::max(worst, c);
    }
  return {worst <= 10.0, "smallest admissible C = " + fmt("%.3f", worst) + " (<= 10)"};
}

// C10
Outcome expansion_accuracy() {
  double worst = 0.0;
  for (std::int64_t m : {0, 10, 50}) {
    const BigInt exact = krank_count(2, m, 2500, table());
    worst = std::max(worst, std::abs(krank_asym(2, m, 2500).ratio(LogReal::from_bigint(exact)) - 1));
  }
  return {worst <= 0.01, "max relative error " + fmt("%.3e", worst) + " at m in {0,10,50} (<= 1%)"};
}

// C11
Outcome pdiff_law() {
  const ScanReport r = pdiff_logconcave(1, 2000, table());
  const BigInt a5 = table().p(6) - table().p(5), a6 = table().p(7) - table().p(6), a7 = table().p(8) - table().p(7);
  const BigInt d6 = a6 * a6 - a5 * a7;
  const bool six_opposite = d6 == -12 && (d6 > 0 ? 1 : -1) == -r.certified_sign;
  return {r.violations.empty() && six_opposite,
          "uniform sign " + std::to_string(r.certified_sign) + " on 71..2000 (" + std::to_string(r.violations.size()) +
              " breaks), l=6 value " + d6.get_str() + ", " + std::to_string(r.exceptions.size()) +
              " small-l exceptions"};
}

// C12
Outcome h_hat_grid() {
  double worst = 0.0;
  for (int twice : {-5, -7, -9})
    for (int nu = 0; nu <= 2; ++nu)
      for (double u : {30.0, 50.0, 100.0})
        for (int L : {2, 3}) {
          const HHatResult r = h_hat(HalfInt::from_twice(twice), nu, u, L);
          const double q = std::abs(r.exact - r.series) / (2 * r.first_omitted);
          worst = std::max(worst, q);
        }
  return {worst <= 1.0, "max |exact - series| / (2 first_omitted) = " + fmt("%.3f", worst)};
}

// C13
Outcome false_theta_grid() {
  double worst = 0.0;
  for (int l = 0; l <= 2; ++l)
    for (double b : {0.0, 1.0, 10.0, 100.0})
      for (Complex z : {Complex(0.01, 0.0), Complex(0.02, 0.002)}) {
        const SeriesComparison c = false_theta_compare(l, b, z, 4);
        worst = std::max(worst, c.abs_error() / (10 * c.scale));
      }
  return {worst <= 1.0, "max |lhs - rhs| / (10 scale) = " + fmt("%.3e", worst)};
}

// C14
Outcome eta_main() {
  const EtaComparison e = eta_inv_compare(Complex(0.01, 0.0));
  return {e.relative_deviation <= 1e-10, "|exact/main - 1| = " + fmt("%.3e", e.relative_deviation) + " at z=0.01"};
}

// C15
Outcome monotonicity() {
  double worst = 0.0;
  std::int64_t at = 0;
  for (const MonotonicityRow& row : monotonicity_table(2, 2500, 0, 100, table()))
    if (row.relative_gap > worst) worst = row.relative_gap, at = row.m;
  return {worst <= 0.10, "max relative gap " + fmt("%.4f", worst) + " at m=" + std::to_string(at) + " (<= 10%)"};
}

struct Entry {
  int id;
  const char* name;
  double budget;
};

constexpr Entry kEntries[] = {
    {1, "oracle triple agreement", 10},    {2, "two-route agreement", 30},
    {3, "sum identity", 60},               {4, "special values", 0},
    {5, "log-concavity scan", 1800},       {6, "unimodality scan", 1800},
    {7, "HT_1 sign changes", 120},         {8, "log-concavity vs closed form", 120},
    {9, "sech regime", 300},               {10, "expansion accuracy", 60},
    {11, "p-difference sign law", 60},     {12, "Hhat tolerance", 10},
    {13, "false theta tolerance", 10},     {14, "eta main term", 1},
    {15, "monotonicity ratio", 120},
};

bool in_fast(int id) { return id <= 4 || (id >= 11 && id <= 14) || id == 5 || id == 6; }

}  // namespace

CriterionResult gamma_consistency(const CoeffTables& tables) {
  const auto start = Clock::now();
  CriterionResult r{"gamma", "gamma consistency", true, {}, 0.0, 0.0};
  std::string bad;
  int checked = 0;
  auto expect = [&](int l, HalfInt mu, int nu, const Rational& want) {
    ++checked;
    if (bad.empty() && tables.gamma(l, mu, nu) != want)
      bad = "gamma_" + std::to_string(l) + "(" + mu.str() + "," + std::to_string(nu) + ") = " +
            tables.gamma(l, mu, nu).get_str() + ", expected " + want.get_str();
  };
  for (int twice = -41; twice <= 41; twice += 2) {
    const HalfInt mu = HalfInt::from_twice(twice);
    const Rational m = mu.to_rational();
    expect(1, mu, 0, Rational(4 * m * m - 1) / 8);
    expect(1, mu, 1, Rational(2 * m + 1) / 2);
    expect(1, mu, 2, Rational(1));
    for (int l = 0; l <= 4; ++l) {
      expect(l, mu, 0, a_coeff(l, mu));
      // gamma_l(mu, nu) = gamma_l(mu+1, nu-1) - gamma_l(mu, nu-1)
      for (int nu = 1; nu <= 4; ++nu)
        expect(l, mu, nu, Rational(tables.gamma(l, mu + 1, nu - 1) - tables.gamma(l, mu, nu - 1)));
    }
  }
  r.passed = bad.empty();
  r.detail = r.passed ? std::to_string(checked) + " entries consistent" : bad;
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

CriterionResult criterion(int id, Suite suite, int workers) {
  if (id < 1 || id > 15) throw std::out_of_range("criterion id must be 1..15");
  const Entry& entry = kEntries[id - 1];
  const auto start = Clock::now();
  Outcome o;
  try {
    switch (id) {
      case 1: o = oracle_triple(); break;
      case 2: o = oracle_pair(); break;
      case 3: o = sum_identity(); break;
      case 4: o = special_values(); break;
      case 5: o = conjecture(true, suite == Suite::kFull ? 1000 : 200, workers); break;
      case 6: o = conjecture(false, suite == Suite::kFull ? 1000 : 200, workers); break;
      case 7: o = figure_ht(); break;
      case 8: o = figure_lc(); break;
      case 9: o = sech_regime(); break;
      case 10: o = expansion_accuracy(); break;
      case 11: o = pdiff_law(); break;
      case 12: o = h_hat_grid(); break;
      case 13: o = false_theta_grid(); break;
      case 14: o = eta_main(); break;
      case 15: o = monotonicity(); break;
    }
  } catch (const std::exception& e) {
    o = fail(std::string("exception: ") + e.what());
  }
  CriterionResult r{"C" + std::to_string(id), entry.name, o.passed, o.detail, 0.0, entry.budget};
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (suite == Suite::kFast && (id == 5 || id == 6)) r.name += " (n <= 200)";
  return r;
}

std::vector<CriterionResult> run_verification(const VerifyOptions& options) {
  std::vector<CriterionResult> results;
  auto record = [&](CriterionResult r) {
    if (options.on_result) options.on_result(r);
    results.push_back(std::move(r));
  };
  for (int id = 1; id <= 15; ++id)
    if (options.suite == Suite::kFull || in_fast(id)) record(criterion(id, options.suite, options.workers));

  CoeffTables tables;
  if (options.tamper_gamma)
    for (int twice = -41; twice <= 41; twice += 2) {
      const HalfInt mu = HalfInt::from_twice(twice);
      tables.override_gamma(1, mu, 1, Rational(-tables.gamma(1, mu, 1)));
    }
  record(gamma_consistency(tables));
  return results;
}

}  // namespace krank
