#pragma once

// Run configuration for the command-line front end.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "krank/expansion.hpp"

namespace krank {

/// Integer range syntax: "a..b", "..b", "a..", "-200..200", "0,10,50", "7".
struct IntRange {
  std::optional<std::int64_t> lo, hi;
  std::vector<std::int64_t> list;  // non-empty for comma lists and single values

  static IntRange parse(const std::string& text);
  /// Concrete values with open ends filled in; ConfigError when empty or reversed.
  std::vector<std::int64_t> values(std::int64_t default_lo, std::int64_t default_hi) const;
  std::int64_t first(std::int64_t default_lo) const;
  std::int64_t last(std::int64_t default_hi) const;
  std::string str() const;
  bool empty() const { return !lo && !hi && list.empty(); }
};

struct RunConfig {
  TruncationOrder truncation;
  std::int64_t ptable = 0;  // 0: sized from the command
  IntRange k, n, m, l;
  int workers = 0;          // 0: WORKERS env, then hardware concurrency
  std::string out_dir;      // empty: stdout
  std::set<std::string> formats{"csv"};

  /// Throws ConfigError.
  void validate() const;
  static RunConfig from_json(const std::string& text);
  static RunConfig load(const std::string& path);
  /// Canonical JSON used for the provenance hash.
  std::string canonical() const;
  std::string hash() const;
};

}  // namespace krank
