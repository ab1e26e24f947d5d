// Acceptance gate: runs the numbered verification battery and prints one
// line per criterion.  Exit status 0 only when every criterion passes.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "adk/verify.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));

  const std::vector<adk::CriterionResult> results =
      adk::run_acceptance(ids, &std::cerr);

  bool all = true;
  for (const adk::CriterionResult& r : results) {
    all = all && r.pass;
    std::printf("criterion %2d %-4s %-24s %7.2fs  %s\n", r.id,
                r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                r.detail.c_str());
  }
  if (results.empty()) {
    std::printf("no criteria selected\n");
    return 1;
  }
  std::printf("%s\n", all ? "acceptance: all criteria passed"
                          : "acceptance: FAILURES PRESENT");
  return all ? 0 : 1;
}
