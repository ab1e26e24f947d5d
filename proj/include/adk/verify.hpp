#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace adk {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// The numbered verification battery.  `ids` empty means all criteria.
/// Results are deterministic (fixed internal seeds); `progress`, when
/// non-null, receives one line per finished criterion including wall time
/// (not deterministic, so callers keep it out of canonical reports).
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids,
                                            std::ostream* progress);

}  // namespace adk
