// Outcome of one named verification.
#pragma once

#include <string>
#include <vector>

namespace hopflift {

struct Check {
  std::string name;
  bool pass = true;
  /// Concrete counterexample (or a short note) when pass is false.
  std::string witness;
};

inline bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

}  // namespace hopflift
