#pragma once

#include <string>
#include <vector>

namespace wlab::suite {

enum class Status { Pass, Fail, Finding };

std::string status_name(Status status);

struct CheckResult {
  std::string name;
  Status status = Status::Fail;
  double metric = 0.0;     // the measured quantity the verdict rests on
  double tolerance = 0.0;  // the bound it was compared against
  std::string detail;
};

struct SuiteResult {
  std::vector<CheckResult> checks;
  /// A "finding" (documented discrepancy) does not fail the suite.
  bool passed() const;
};

/// Runs the ten acceptance checks end to end. Deterministic.
SuiteResult run_all();

/// One line per check: "<name>: <status> (metric=..., tol=...) <detail>".
std::string render_lines(const SuiteResult& result);

}  // namespace wlab::suite
