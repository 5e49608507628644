// krank_lab: exact k-rank counts, inequality scans, asymptotic comparisons
// and the verification suite.
//
// Exit status: 0 success, 1 usage or configuration error, 2 a mathematical
// check failed (violations found, criterion failed).

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>

#include "krank/config.hpp"
#include "krank/errors.hpp"
#include "krank/exact_core.hpp"
#include "krank/expansion.hpp"
#include "krank/lab.hpp"
#include "krank/parallel.hpp"
#include "krank/report.hpp"
#include "krank/svg.hpp"
#include "krank/verify.hpp"

namespace fs = std::filesystem;
using namespace krank;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMath = 2;

struct Globals {
  std::string config_path;
  std::string out_dir;
  std::string format;
  bool svg = false;
  int workers = -1;
  std::int64_t ptable = -1;
};

struct Args {
  std::string k, m, n, l;
  std::string statistic, target, suite = "fast", fault, what;
};

// Collects everything a command produces; write() is the only place that
// touches the filesystem or stdout.
class Writer {
 public:
  Writer(const RunConfig& cfg, bool svg) : cfg_(cfg), svg_(svg || cfg.formats.count("svg")) {}

  void table(ResultTable t) { tables_.push_back(std::move(t)); }
  void plot(const std::string& name, Plot p) {
    if (svg_) plots_.emplace_back(name, std::move(p));
  }

  void write() const {
    if (cfg_.out_dir.empty()) {
      const bool json = cfg_.formats.count("json") && !cfg_.formats.count("csv");
      for (const auto& t : tables_) std::cout << (json ? t.to_json() : t.to_csv());
      for (const auto& [name, p] : plots_) {
        const std::string file = name + ".svg";
        std::ofstream(file) << render_svg(p);
        std::cerr << "wrote " << file << "\n";
      }
      return;
    }
    fs::create_directories(cfg_.out_dir);
    for (const auto& t : tables_) {
      if (cfg_.formats.count("csv") || cfg_.formats == std::set<std::string>{"svg"})
        emit(t.name() + ".csv", t.to_csv());
      if (cfg_.formats.count("json")) emit(t.name() + ".json", t.to_json());
    }
    for (const auto& [name, p] : plots_) emit(name + ".svg", render_svg(p));
  }

 private:
  void emit(const std::string& file, const std::string& text) const {
    const fs::path path = fs::path(cfg_.out_dir) / file;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << text;
    std::cerr << "wrote " << path.string() << "\n";
  }

  const RunConfig& cfg_;
  bool svg_;
  std::vector<ResultTable> tables_;
  std::vector<std::pair<std::string, Plot>> plots_;
};

struct Context {
  RunConfig cfg;
  std::string command;
  int workers = 1;

  ResultTable make(const std::string& name, std::vector<Column> schema) const {
    ResultTable t(name, std::move(schema));
    t.provenance().command = command;
    t.provenance().config_hash = cfg.hash();
    return t;
  }

  PartitionTable ptable(std::int64_t needed) const {
    if (cfg.ptable > 0 && cfg.ptable < needed)
      throw ConfigError("p-table size " + std::to_string(cfg.ptable) + " is below the " +
                        std::to_string(needed) + " this command needs");
    return PartitionTable(std::max(cfg.ptable, needed));
  }
};

Cell opt_float(double v) { return std::isfinite(v) ? Cell::of(v) : Cell::none(CellKind::kFloat); }

std::vector<Column> cols(std::initializer_list<std::pair<const char*, CellKind>> list) {
  std::vector<Column> out;
  for (const auto& [name, kind] : list) out.push_back({name, kind});
  return out;
}

int single_k(const IntRange& r, int fallback) {
  if (r.empty()) return fallback;
  const auto v = r.values(fallback, fallback);
  if (v.size() != 1) throw ConfigError("expected a single k, got " + r.str());
  return static_cast<int>(v.front());
}

std::int64_t single_n(const IntRange& r, std::int64_t fallback) {
  if (r.empty()) return fallback;
  const auto v = r.values(fallback, fallback);
  if (v.size() != 1) throw ConfigError("expected a single n, got " + r.str());
  if (v.front() < 0) throw ConfigError("n must be >= 0");
  return v.front();
}

int cmd_krank(const Context& ctx, Writer& out) {
  if (ctx.cfg.k.empty() || ctx.cfg.n.empty()) throw ConfigError("krank needs --k and --n");
  const int k = single_k(ctx.cfg.k, 1);
  const std::int64_t n = single_n(ctx.cfg.n, 0);
  if (k < 1) throw ConfigError("k must be >= 1");
  const PartitionTable table = ctx.ptable(n);
  ResultTable t = ctx.make("krank", cols({{"k", CellKind::kInteger},
                                          {"m", CellKind::kInteger},
                                          {"n", CellKind::kInteger},
                                          {"count", CellKind::kExact}}));
  for (std::int64_t m : ctx.cfg.m.values(-n, n))
    t.add_row({Cell::of(std::int64_t{k}), Cell::of(m), Cell::of(n), Cell::of(krank_count(k, m, n, table))});
  out.table(std::move(t));
  return kExitOk;
}

ResultTable scan_table(const Context& ctx, const std::string& name, const ScanReport& r) {
  const bool by_l = r.statistic == "pdiff";
  ResultTable t = by_l ? ctx.make(name, cols({{"kind", CellKind::kText},
                                              {"l", CellKind::kInteger},
                                              {"witness", CellKind::kText}}))
                       : ctx.make(name, cols({{"kind", CellKind::kText},
                                              {"k", CellKind::kInteger},
                                              {"m", CellKind::kInteger},
                                              {"n", CellKind::kInteger},
                                              {"witness", CellKind::kText}}));
  auto add = [&](const char* kind, const Violation& v) {
    if (by_l)
      t.add_row({Cell::of(kind), Cell::of(v.m), Cell::of(v.witness)});
    else
      t.add_row({Cell::of(kind), Cell::of(std::int64_t{v.k}), Cell::of(v.m), Cell::of(v.n), Cell::of(v.witness)});
  };
  for (const auto& v : r.violations) add("violation", v);
  for (const auto& v : r.exceptions) add("exception", v);
  t.add_note("window: " + r.window);
  t.add_note("checked " + std::to_string(r.checked) + ", violations " + std::to_string(r.violations.size()) +
             ", exceptions " + std::to_string(r.exceptions.size()));
  if (r.certified_sign != 0) t.add_note("certified sign " + std::to_string(r.certified_sign));
  for (const auto& note : r.notes) t.add_note(note);
  return t;
}

int cmd_scan(const Context& ctx, const std::string& statistic, Writer& out) {
  const RunConfig& cfg = ctx.cfg;
  ScanReport total;
  if (statistic == "pdiff") {
    const auto lo = cfg.l.first(1), hi = cfg.l.last(2000);
    if (lo < 1 || lo > hi) throw ConfigError("bad l range " + cfg.l.str());
    const PartitionTable table = ctx.ptable(hi + 2);
    total = pdiff_logconcave(lo, hi, table);
  } else if (statistic == "logconcave" || statistic == "unimodal" || statistic == "edge") {
    const int k_default_lo = statistic == "unimodal" ? 2 : 1;
    const auto ks = cfg.k.values(k_default_lo, 10);
    const std::int64_t n_hi = cfg.n.last(1000);
    const PartitionTable table = ctx.ptable(n_hi);
    bool first = true;
    for (std::int64_t k64 : ks) {
      const int k = static_cast<int>(k64);
      if (k < 1) throw ConfigError("k must be >= 1");
      ScanReport r;
      if (statistic == "edge") {
        const std::int64_t n_lo = std::max<std::int64_t>(cfg.n.first(142 + 2 * k), 142 + 2 * k);
        r.statistic = "edge";
        r.k_lo = r.k_hi = k;
        bool any = false;
        for (std::int64_t n = n_lo; n <= n_hi; ++n) {
          ScanReport one = edge_logconcavity(k, n, table);
          std::erase_if(one.notes, [](const std::string& s) { return s.rfind("window m in", 0) == 0; });
          if (!any) r = one, any = true;
          else r.absorb(one);
        }
        if (!any) continue;
      } else {
        const std::int64_t n_lo = cfg.n.first(0);
        if (n_lo > n_hi) throw ConfigError("empty n range " + cfg.n.str());
        r = statistic == "logconcave" ? logconcavity_scan(k, n_lo, n_hi, table, ctx.workers)
                                      : unimodality_scan(k, n_lo, n_hi, table, ctx.workers);
      }
      if (first) total = r, first = false;
      else total.absorb(r);
    }
  } else {
    throw ConfigError("unknown scan statistic '" + statistic + "'");
  }
  std::cerr << statistic << ": checked " << total.checked << ", violations " << total.violations.size();
  if (!total.exceptions.empty()) std::cerr << ", exceptions " << total.exceptions.size();
  std::cerr << "\n";
  out.table(scan_table(ctx, "scan_" + statistic, total));
  return total.ok() ? kExitOk : kExitMath;
}

int cmd_compare(const Context& ctx, const std::string& target, Writer& out) {
  const RunConfig& cfg = ctx.cfg;
  const std::int64_t n = single_n(cfg.n, 2500);
  if (n < 1) throw ConfigError("compare needs n >= 1");
  if (target == "lc") {
    const int k = single_k(cfg.k, 2);
    const auto lo = cfg.m.first(-200), hi = cfg.m.last(200);
    const PartitionTable table = ctx.ptable(n);
    ResultTable t = ctx.make("compare_lc", cols({{"m", CellKind::kInteger},
                                                  {"defined", CellKind::kInteger},
                                                  {"LN", CellKind::kFloat},
                                                  {"aLN", CellKind::kFloat},
                                                  {"relative_gap", CellKind::kFloat}}));
    PlotSeries ln{"LN exact", "red", {}, {}}, aln{"aLN asymptotic", "blue", {}, {}};
    double worst = 0.0;
    for (const LcRow& r : compare_lc_table(k, n, lo, hi, table)) {
      const auto none = Cell::none(CellKind::kFloat);
      t.add_row({Cell::of(r.m), Cell::of(std::int64_t{r.defined}), r.defined ? opt_float(r.ln) : none,
                 opt_float(r.aln), r.defined ? opt_float(r.relative_gap) : none});
      ln.x.push_back(static_cast<double>(r.m));
      ln.y.push_back(r.defined ? r.ln : NAN);
      aln.x.push_back(static_cast<double>(r.m));
      aln.y.push_back(r.aln);
      if (r.defined) worst = std::max(worst, r.relative_gap);
    }
    t.add_note("max relative gap " + Cell::of(worst).str());
    out.table(std::move(t));
    out.plot("compare_lc", Plot{"LN vs aLN, k=" + std::to_string(k) + ", n=" + std::to_string(n), "m",
                                "-Delta^2 log N", {ln, aln}, {}});
    return kExitOk;
  }
  if (target == "mono") {
    const int k = single_k(cfg.k, 2);
    const auto lo = cfg.m.first(0), hi = cfg.m.last(100);
    const PartitionTable table = ctx.ptable(n + std::max(std::abs(lo), std::abs(hi)) + 1);
    ResultTable t = ctx.make("compare_mono", cols({{"m", CellKind::kInteger},
                                                    {"exact_ratio", CellKind::kFloat},
                                                    {"rhs", CellKind::kFloat},
                                                    {"relative_gap", CellKind::kFloat}}));
    PlotSeries ex{"exact", "red", {}, {}}, rhs{"closed form", "blue", {}, {}};
    for (const MonotonicityRow& r : monotonicity_table(k, n, lo, hi, table)) {
      t.add_row({Cell::of(r.m), opt_float(r.exact_ratio), opt_float(r.rhs), opt_float(r.relative_gap)});
      ex.x.push_back(static_cast<double>(r.m));
      ex.y.push_back(r.exact_ratio);
      rhs.x.push_back(static_cast<double>(r.m));
      rhs.y.push_back(r.rhs);
    }
    out.table(std::move(t));
    out.plot("compare_mono", Plot{"monotonicity ratio, k=" + std::to_string(k) + ", n=" + std::to_string(n), "m",
                                  "ratio", {ex, rhs}, {}});
    return kExitOk;
  }
  if (target == "asym") {
    const int k = single_k(cfg.k, 2);
    const auto ms = cfg.m.empty() ? IntRange::parse("0,10,50").list : cfg.m.values(0, 0);
    const PartitionTable table = ctx.ptable(n);
    ResultTable t = ctx.make("compare_asym", cols({{"m", CellKind::kInteger},
                                                    {"exact", CellKind::kExact},
                                                    {"asym", CellKind::kFloat},
                                                    {"log_asym", CellKind::kFloat},
                                                    {"relative_error", CellKind::kFloat}}));
    for (std::int64_t m : ms) {
      if (m < 0) throw ConfigError("compare asym needs m >= 0");
      const BigInt exact = krank_count(k, m, n, table);
      std::string diag;
      const LogReal a = krank_asym(k, m, n, 0, cfg.truncation, &diag);
      const double err = exact == 0 ? NAN : std::abs(a.ratio(LogReal::from_bigint(exact)) - 1);
      t.add_row({Cell::of(m), Cell::of(exact), opt_float(a.to_double()), opt_float(a.log_magnitude()), opt_float(err)});
      if (!diag.empty()) t.add_note("m=" + std::to_string(m) + ": " + diag);
    }
    out.table(std::move(t));
    return kExitOk;
  }
  if (target == "ht") {
    const int k = single_k(cfg.k, 1);
    const std::int64_t w = default_ht_window(n);
    const auto lo = cfg.m.first(-w), hi = cfg.m.last(w);
    const PartitionTable table = ctx.ptable(n);
    ResultTable t = ctx.make("compare_ht", cols({{"m", CellKind::kInteger},
                                                  {"sign", CellKind::kInteger},
                                                  {"value", CellKind::kFloat}}));
    PlotSeries s{"HT", "black", {}, {}};
    for (std::int64_t m = lo; m <= hi; ++m) {
      const HTRecord r = ht_exact(k, m, n, table);
      const double v = r.value.value_or(NAN);
      t.add_row({Cell::of(m), r.defined ? Cell::of(std::int64_t{r.sign}) : Cell::none(CellKind::kInteger),
                 opt_float(v)});
      s.x.push_back(static_cast<double>(m));
      s.y.push_back(v);
    }
    const SignChanges sc = ht_sign_changes(k, n, lo, hi, table);
    std::string at;
    std::vector<double> ticks;
    for (auto m : sc.locations) {
      at += (at.empty() ? "" : ",") + std::to_string(m);
      ticks.push_back(static_cast<double>(m));
    }
    t.add_note("sign changes " + std::to_string(sc.count) + " at m = " + at);
    std::cerr << "sign changes: " << sc.count << " on m in [" << lo << ", " << hi << "]\n";
    out.table(std::move(t));
    out.plot("compare_ht", Plot{"HT_" + std::to_string(k) + "(m, " + std::to_string(n) + ")", "m", "HT", {s}, ticks});
    return kExitOk;
  }
  throw ConfigError("unknown compare target '" + target + "'");
}

int cmd_verify(const Context& ctx, const Args& args, Writer& out) {
  if (args.suite != "fast" && args.suite != "full") throw ConfigError("suite must be fast or full");
  if (!args.fault.empty() && args.fault != "gamma") throw ConfigError("unknown fault '" + args.fault + "'");
  VerifyOptions opt;
  opt.suite = args.suite == "full" ? Suite::kFull : Suite::kFast;
  opt.workers = ctx.workers;
  opt.tamper_gamma = args.fault == "gamma";
  opt.on_result = [](const CriterionResult& r) {
    std::printf("[%s] %-4s %s: %s (%.2f s)\n", r.passed ? "PASS" : "FAIL", r.id.c_str(), r.name.c_str(),
                r.detail.c_str(), r.seconds);
    std::fflush(stdout);
  };
  const auto results = run_verification(opt);
  ResultTable t = ctx.make("verify", cols({{"id", CellKind::kText},
                                          {"name", CellKind::kText},
                                          {"passed", CellKind::kInteger},
                                          {"detail", CellKind::kText},
                                          {"seconds", CellKind::kFloat}}));
  std::vector<std::string> failed;
  for (const auto& r : results) {
    t.add_row({Cell::of(r.id), Cell::of(r.name), Cell::of(std::int64_t{r.passed}), Cell::of(r.detail),
               Cell::of(r.seconds)});
    if (!r.passed) failed.push_back(r.name);
  }
  if (!ctx.cfg.out_dir.empty()) out.table(std::move(t));
  if (failed.empty()) {
    std::printf("all %zu checks passed\n", results.size());
    return kExitOk;
  }
  std::string names;
  for (const auto& f : failed) names += (names.empty() ? "" : ", ") + f;
  std::printf("FAILED: %s\n", names.c_str());
  return kExitMath;
}

int cmd_export(const Context& ctx, const std::string& what, Writer& out) {
  const RunConfig& cfg = ctx.cfg;
  if (what == "ptable") {
    const auto ns = cfg.n.values(0, 100);
    const PartitionTable table = ctx.ptable(cfg.n.last(100));
    ResultTable t = ctx.make("ptable", cols({{"n", CellKind::kInteger}, {"p", CellKind::kExact}}));
    for (auto n : ns) t.add_row({Cell::of(n), Cell::of(table.p(n))});
    out.table(std::move(t));
    return kExitOk;
  }
  if (what == "gamma") {
    ResultTable t = ctx.make("gamma", cols({{"l", CellKind::kInteger},
                                            {"mu", CellKind::kText},
                                            {"nu", CellKind::kInteger},
                                            {"gamma", CellKind::kText}}));
    for (auto l : cfg.l.values(0, 4))
      for (int twice = -13; twice <= 13; twice += 2)
        for (int nu = 0; nu <= 4; ++nu) {
          const HalfInt mu = HalfInt::from_twice(twice);
          t.add_row({Cell::of(l), Cell::of(mu.str()), Cell::of(std::int64_t{nu}),
                     Cell::of(gamma_coeff(static_cast<int>(l), mu, nu).get_str())});
        }
    out.table(std::move(t));
    return kExitOk;
  }
  if (what == "row") {
    return cmd_krank(ctx, out);
  }
  throw ConfigError("unknown export target '" + what + "' (ptable, gamma, row)");
}

std::string joined_args(int argc, char** argv) {
  std::string s;
  for (int i = 1; i < argc; ++i) s += (i > 1 ? " " : "") + std::string(argv[i]);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"krank_lab: exact k-rank statistics and asymptotic checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  Args a;
  app.add_option("--config", g.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", g.out_dir, "output directory (default: stdout)");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--svg", g.svg, "also write SVG plots");
  app.add_option("--workers", g.workers, "worker threads (WORKERS env overrides)")->check(CLI::Range(0, 1024));
  app.add_option("--ptable", g.ptable, "partition table size")->check(CLI::NonNegativeNumber);

  auto* krank = app.add_subcommand("krank", "exact N_k(m,n) or a whole row");
  krank->add_option("--k", a.k, "k")->required();
  krank->add_option("--m", a.m, "m or m range (default: the full row)");
  krank->add_option("--n", a.n, "n")->required();

  auto* scan = app.add_subcommand("scan", "exact inequality scans");
  scan->add_option("statistic", a.statistic, "logconcave | unimodal | pdiff | edge")
      ->required()
      ->check(CLI::IsMember({"logconcave", "unimodal", "pdiff", "edge"}));
  scan->add_option("--k", a.k, "k range");
  scan->add_option("--n", a.n, "n range");
  scan->add_option("--l", a.l, "l range (pdiff)");

  auto* compare = app.add_subcommand("compare", "exact values against closed forms");
  compare->add_option("target", a.target, "lc | mono | asym | ht")
      ->required()
      ->check(CLI::IsMember({"lc", "mono", "asym", "ht"}));
  compare->add_option("--k", a.k, "k");
  compare->add_option("--n", a.n, "n");
  compare->add_option("--m", a.m, "m range or list");

  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_option("--suite", a.suite, "fast | full")->check(CLI::IsMember({"fast", "full"}));
  verify->add_option("--fault", a.fault, "")->group("");

  auto* exp = app.add_subcommand("export", "dump tables");
  exp->add_option("what", a.what, "ptable | gamma | row")->required();
  exp->add_option("--k", a.k, "k (row)");
  exp->add_option("--n", a.n, "n range");
  exp->add_option("--m", a.m, "m range (row)");
  exp->add_option("--l", a.l, "l range (gamma)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Context ctx;
    if (!g.config_path.empty()) ctx.cfg = RunConfig::load(g.config_path);
    RunConfig& cfg = ctx.cfg;
    if (!a.k.empty()) cfg.k = IntRange::parse(a.k);
    if (!a.n.empty()) cfg.n = IntRange::parse(a.n);
    if (!a.m.empty()) cfg.m = IntRange::parse(a.m);
    if (!a.l.empty()) cfg.l = IntRange::parse(a.l);
    if (!g.out_dir.empty()) cfg.out_dir = g.out_dir;
    if (!g.format.empty()) cfg.formats = {g.format};
    if (g.svg) cfg.formats.insert("svg");
    if (g.workers >= 0) cfg.workers = g.workers;
    if (g.ptable >= 0) cfg.ptable = g.ptable;
    cfg.validate();
    ctx.workers = resolve_workers(cfg.workers);
    ctx.command = joined_args(argc, argv);

    Writer out(cfg, g.svg);
    int status = kExitOk;
    if (krank->parsed()) status = cmd_krank(ctx, out);
    else if (scan->parsed()) status = cmd_scan(ctx, a.statistic, out);
    else if (compare->parsed()) status = cmd_compare(ctx, a.target, out);
    else if (verify->parsed()) status = cmd_verify(ctx, a, out);
    else if (exp->parsed()) status = cmd_export(ctx, a.what, out);
    out.write();
    return status;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BoundsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kExitMath;
  }
}
