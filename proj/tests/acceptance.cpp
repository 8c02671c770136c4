// Acceptance gate: runs every suite check and prints one line per criterion.
// Exit code is nonzero iff any check fails; findings do not fail the run.

#include <cstdio>

#include "wlab/suite.hpp"

int main() {
  const auto result = wlab::suite::run_all();
  std::fputs(wlab::suite::render_lines(result).c_str(), stdout);
  return result.passed() ? 0 : 1;
}
