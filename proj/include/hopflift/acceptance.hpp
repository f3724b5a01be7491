// The numbered acceptance criteria and the per-datum self-test suite.
#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hopflift/check.hpp"
#include "hopflift/datum.hpp"

namespace hopflift {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double budget = 0;  // seconds; the run fails when exceeded
};

int criterion_count();
CriterionResult run_criterion(int id);
/// All criteria when ids is empty.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids = {});
/// "[PASS] 4  title  detail", with the elapsed time when timings is set.
std::string format_line(const CriterionResult& r, bool timings);
void to_json(nlohmann::json& j, const CriterionResult& r);

/// Structural checks on one datum: validation, confluence, coalgebra laws,
/// the retraction, δf for unit generator values, its bosonization and the
/// lifted algebra.
std::vector<Check> preset_suite(const CartanDatum& d);

}  // namespace hopflift
