// Acceptance checks, one line per criterion. Exit status 1 if any fails.
// Written against the library API directly; the verify module reruns the
// same criteria for the CLI.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "krank/bessel.hpp"
#include "krank/comparators.hpp"
#include "krank/exact_core.hpp"
#include "krank/expansion.hpp"
#include "krank/lab.hpp"
#include "krank/parallel.hpp"

using namespace krank;

namespace {

int failures = 0;

struct Check {
  bool ok = true;
  std::string detail;
};

void run(const char* id, const char* what, double budget, const std::function<Check()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Check c;
  try {
    c = body();
  } catch (const std::exception& e) {
    c = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget > 0 && s > budget) {
    c.ok = false;
    c.detail += " [over budget]";
  }
  if (!c.ok) ++failures;
  std::printf("[%s] %-4s %s: %s (%.2f s)\n", c.ok ? "PASS" : "FAIL", id, what, c.detail.c_str(), s);
  std::fflush(stdout);
}

std::string num(const char* f, double v) {
  char b[64];
  std::snprintf(b, sizeof b, f, v);
  return b;
}

const PartitionTable& T() {
  static const PartitionTable t(10'000);
  return t;
}

}  // namespace

int main() {
  const int workers = resolve_workers(1);
  T();

  run("C1", "oracle triple agreement", 10, [] {
    long cells = 0;
    for (int k = 1; k <= 2; ++k)
      for (int n = 0; n <= 30; ++n) {
        auto hist = enumerate_stats_oracle(n, k == 1 ? Statistic::kCrank : Statistic::kRank);
        for (int m = -n; m <= n; ++m, ++cells) {
          const BigInt a = krank_count(k, m, n, T());
          const BigInt b = qseries_row_oracle(k, m, n).coeffs[n];
          const BigInt c = hist.count(m) ? BigInt(hist[m]) : BigInt(0);
          if (a != b || a != c) return Check{false, "k=" + std::to_string(k) + " m=" + std::to_string(m) +
                                                        " n=" + std::to_string(n)};
        }
      }
    return Check{true, std::to_string(cells) + " cells"};
  });

  run("C2", "two-route agreement", 30, [] {
    long cells = 0;
    for (int k = 3; k <= 6; ++k)
      for (int m = -60; m <= 60; ++m) {
        const auto s = qseries_row_oracle(k, m, 60);
        for (int n = 0; n <= 60; ++n, ++cells)
          if (s.coeffs[n] != krank_count(k, m, n, T()))
            return Check{false, "k=" + std::to_string(k) + " m=" + std::to_string(m) + " n=" + std::to_string(n)};
      }
    return Check{true, std::to_string(cells) + " cells"};
  });

  run("C3", "sum identity", 60, [] {
    for (int k = 1; k <= 2; ++k)
      for (int n = 0; n <= 500; ++n)
        if (krank_row(k, n, T()).total() != T().p(n))
          return Check{false, "k=" + std::to_string(k) + " n=" + std::to_string(n)};
    return Check{true, "k in {1,2}, n <= 500"};
  });

  run("C4", "special values", 0, [] {
    const bool ok = krank_count(1, 0, 1, T()) == -1 && krank_count(1, 1, 1, T()) == 1 &&
                    krank_count(1, -1, 1, T()) == 1;
    return Check{ok, "N_1(0,1)=" + krank_count(1, 0, 1, T()).get_str()};
  });

  ConjectureScan scans[11];
  run("C5", "log-concavity scan k<=10 n<=1000", 1800, [&] {
    std::int64_t checked = 0;
    std::size_t bad = 0;
    for (int k = 1; k <= 10; ++k) {
      scans[k] = conjecture_scan(k, 1, 1000, T(), workers);
      checked += scans[k].logconcave.checked;
      bad += scans[k].logconcave.violations.size();
    }
    return Check{bad == 0, std::to_string(checked) + " checks, " + std::to_string(bad) + " violations"};
  });

  run("C6", "unimodality scan k in 2..10 n<=1000", 1800, [&] {
    std::int64_t checked = 0;
    std::size_t bad = 0;
    for (int k = 2; k <= 10; ++k) {
      checked += scans[k].unimodal.checked;
      bad += scans[k].unimodal.violations.size();
    }
    return Check{bad == 0, std::to_string(checked) + " checks, " + std::to_string(bad) + " violations"};
  });

  run("C7", "HT_1(m,2500) sign changes", 120, [] {
    const auto narrow = ht_sign_changes(1, 2500, -250, 250, T());
    const auto w = default_ht_window(2500);
    const auto wide = ht_sign_changes(1, 2500, -w, w, T());
    return Check{wide.count == 4, std::to_string(wide.count) + " on |m| <= " + std::to_string(w) +
                                      " (calibrated window), " + std::to_string(narrow.count) + " on |m| <= 250"};
  });

  run("C8", "LN vs aLN, k=2 n=2500 |m|<=200", 120, [] {
    double worst = 0;
    for (int m = -200; m <= 200; ++m) {
      const double ln = delta2_log_exact(2, m, 2500, T());
      worst = std::max(worst, std::abs(ln / lc_rhs(m, 2500) - 1));
    }
    return Check{worst <= 0.15, "max gap " + num("%.4f", worst)};
  });

  run("C9", "sech regime n=1e4", 300, [] {
    const std::int64_t n = 10'000;
    const Real p(T().p(n), 128);
    double worst = 0;
    for (int k = 1; k <= 3; ++k)
      for (std::int64_t m = -100; m <= 100; ++m) {
        const double r = (Real(krank_count(k, m, n, T()), 128) / p).to_double() / sech_ratio(m, n);
        worst = std::max(worst, std::abs(r - 1) * 1e6 / static_cast<double>(n + m * m));
      }
    return Check{worst <= 10, "C needed " + num("%.3f", worst)};
  });

  run("C10", "expansion k=2 n=2500", 60, [] {
    double worst = 0;
    for (int m : {0, 10, 50})
      worst = std::max(worst, std::abs(krank_asym(2, m, 2500).ratio(LogReal::from_bigint(krank_count(2, m, 2500, T()))) - 1));
    return Check{worst <= 0.01, "max rel error " + num("%.3e", worst)};
  });

  run("C11", "p-difference sign law", 60, [] {
    const auto s = pdiff_signs(6, 2000, T());
    const int law = s[71 - 6];
    for (std::size_t i = 71 - 6; i < s.size(); ++i)
      if (s[i] != law) return Check{false, "sign break at l=" + std::to_string(i + 6)};
    const BigInt a5 = T().p(6) - T().p(5), a6 = T().p(7) - T().p(6), a7 = T().p(8) - T().p(7);
    const BigInt d = a6 * a6 - a5 * a7;
    return Check{d == -12 && s[0] == -law, "sign " + std::to_string(law) + " on 71..2000, l=6 gives " + d.get_str()};
  });

  run("C12", "Hhat tolerance", 10, [] {
    double worst = 0;
    for (int t : {-5, -7, -9})
      for (int nu = 0; nu <= 2; ++nu)
        for (double u : {30.0, 50.0, 100.0})
          for (int L : {2, 3}) {
            const auto r = h_hat(HalfInt::from_twice(t), nu, u, L);
            worst = std::max(worst, std::abs(r.exact - r.series) / (2 * r.first_omitted));
          }
    return Check{worst <= 1, "max err/(2 omitted) " + num("%.3f", worst)};
  });

  run("C13", "false theta tolerance", 10, [] {
    double worst = 0;
    for (int l = 0; l <= 2; ++l)
      for (double b : {0.0, 1.0, 10.0, 100.0})
        for (Complex z : {Complex(0.01, 0), Complex(0.02, 0.002)}) {
          const auto c = false_theta_compare(l, b, z, 4);
          worst = std::max(worst, c.abs_error() / (10 * c.scale));
        }
    return Check{worst <= 1, "max err/(10 scale) " + num("%.3e", worst)};
  });

  run("C14", "eta main term z=0.01", 1, [] {
    const auto e = eta_inv_compare(Complex(0.01, 0));
    return Check{e.relative_deviation <= 1e-10, "rel dev " + num("%.3e", e.relative_deviation)};
  });

  run("C15", "monotonicity ratio k=2 n=2500", 120, [] {
    double worst = 0;
    for (const auto& r : monotonicity_table(2, 2500, 0, 100, T())) worst = std::max(worst, r.relative_gap);
    return Check{worst <= 0.10, "max gap " + num("%.4f", worst)};
  });

  std::printf("%s: %d failing\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
