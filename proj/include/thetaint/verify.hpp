#pragma once

// The acceptance checks, numbered 1-11. Shared by `theta_interp verify` and
// the acceptance test binary. Randomized point sets use fixed seeds.

#include <functional>
#include <set>
#include <string>
#include <vector>

namespace thetaint {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double measured = 0;   // worst error (or worst ratio for the growth check)
  double tolerance = 0;
  double seconds = 0;
  std::string detail;
};

constexpr int kCriteriaCount = 11;

CheckResult run_check(int id);

// runs the given ids in increasing order (all when empty); on_done sees each result as it finishes
std::vector<CheckResult> run_checks(const std::set<int>& ids, const std::function<void(const CheckResult&)>& on_done = {});

// one line; without timings the text is reproducible run to run
std::string format_check(const CheckResult& r, bool timings = false);

}  // namespace thetaint
