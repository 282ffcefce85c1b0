#pragma once

#include <functional>
#include <string>
#include <vector>

namespace seistex {

/// Outcome of one built-in property suite.
struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;
};

struct PropertyCheck {
  std::string name;
  double limit_seconds;
  // Returns an empty string on success, otherwise the first failure.
  std::function<std::string()> run;
};

/// The invariant suites run by `seistex selftest`, in a fixed order:
/// descriptor combinatorics, rotation invariance, shift invariance, GLCM
/// oracle, metric oracle, LRI-A cases, semblance bounds, SLIC partition,
/// SVM separability. Every suite is seeded and deterministic.
std::vector<PropertyCheck> property_checks();

/// Runs one suite, timing it. A suite over its time limit fails.
CheckResult run_check(const PropertyCheck& check);

/// "PASS name (1.23 s) detail" style line.
std::string format_check(const CheckResult& r);

}  // namespace seistex
