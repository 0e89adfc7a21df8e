#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace cppforge {

/// Outcome of one acceptance criterion. `limit_seconds` is 0 when the
/// criterion has no time bound.
struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  std::vector<std::string> notes;
  double seconds = 0;
  double limit_seconds = 0;
};

struct AcceptanceOptions {
  unsigned threads = 0;
  std::uint64_t seed = 0x5eed;
  /// Progress and notes go here when set.
  std::ostream* log = nullptr;
};

inline constexpr int kCriterionCount = 10;

CriterionResult run_criterion(int id, const AcceptanceOptions& options = {});

/// Runs the listed criteria in order (all of them when `ids` is empty).
/// Criterion 10 also checks the combined time of 1-9 when they ran.
std::vector<CriterionResult> run_acceptance(std::vector<int> ids, const AcceptanceOptions& options = {});

/// "PASS [3] title: detail (1.25 s, limit 300 s)"
std::string format_result(const CriterionResult& r);

}  // namespace cppforge
