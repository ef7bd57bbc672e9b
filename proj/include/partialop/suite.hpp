#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace partialop {

/// One property check: passes when measured <= allowed * tolerance_scale.
struct CheckResult {
  std::string suite;
  std::string name;
  double measured = 0.0;
  double allowed = 0.0;
  bool passed = false;
};

struct SuiteOptions {
  std::uint64_t seed = 20240611;
  /// Multiplies every allowed value; 0 turns every nonzero measurement into a failure.
  double tolerance_scale = 1.0;
};

struct SuiteReport {
  std::vector<CheckResult> checks;

  bool all_passed() const noexcept;
  int exit_code() const noexcept { return all_passed() ? 0 : 1; }
  /// One line per check: PASS/FAIL, suite, name, measured and allowed.
  std::string text() const;
};

/// Suite names accepted by run_suite.
const std::vector<std::string>& suite_names();

/// Runs neumann, graph, cfunc, shift, or all (which adds the scan checks).
/// Throws InvalidArgument for an unknown name.
SuiteReport run_suite(std::string_view name, const SuiteOptions& options = {});

}  // namespace partialop
