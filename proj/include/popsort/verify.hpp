#pragma once

#include <functional>
#include <string>
#include <vector>

namespace popsort {

enum class Suite { Fast, All };

struct InvariantResult {
  std::string name;
  bool passed = true;
  /// Counterexample or note; empty when nothing to add.
  std::string detail;
  /// Set when the check reported a diagnostic that does not count as a failure.
  bool mismatch_note = false;
};

/// Runs every cross-module invariant at the suite's bounds. The fast suite
/// stays at n <= 6; the full suite uses the per-invariant bounds. Results are
/// produced in a fixed order, independent of `jobs`.
std::vector<InvariantResult> run_suite(Suite suite, int jobs = 1,
                                       const std::function<void(const InvariantResult&)>& on_result = {});

}  // namespace popsort
