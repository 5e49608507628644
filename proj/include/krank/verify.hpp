#pragma once

// Programmatic acceptance suite. Each criterion reports pass/fail with a
// one-line detail string.

#include <functional>
#include <string>
#include <vector>

#include "krank/coefficients.hpp"

namespace krank {

enum class Suite { kFast, kFull };

struct CriterionResult {
  std::string id;    // "C1".."C15", "gamma"
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;  // 0: none
};

struct VerifyOptions {
  Suite suite = Suite::kFast;
  int workers = 1;
  /// Corrupt gamma_1(mu, 1) in the harness tables (mutation check).
  bool tamper_gamma = false;
  /// Called after each criterion finishes.
  std::function<void(const CriterionResult&)> on_result;
};

std::vector<CriterionResult> run_verification(const VerifyOptions& options);

/// gamma_l(mu, nu) table against closed forms and the difference recurrence.
CriterionResult gamma_consistency(const CoeffTables& tables);

/// Single criteria, exposed for the acceptance binary.
CriterionResult criterion(int id, Suite suite, int workers);

}  // namespace krank
