#pragma once

// The eleven end-to-end acceptance checks.  Each one recomputes its objects
// from scratch and compares with hard-coded reference data.

#include <functional>
#include <string>
#include <vector>

namespace qes {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;  // deterministic; no timings
  double seconds = 0;
};

/// Criterion `id` in 1..11; throws std::out_of_range otherwise.
CriterionResult run_criterion(int id);

/// All criteria in order; `on_result` (if set) sees each one as it finishes.
std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS  3  discriminants  (6/6 exact)" style line, optionally with seconds.
std::string format_result(const CriterionResult& r, bool with_time);

}  // namespace qes
