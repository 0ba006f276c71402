#pragma once

#include <functional>
#include <string>
#include <vector>

namespace dq {

struct CriterionResult {
  int id = 0;
  std::string suite;
  std::string title;
  bool pass = false;
  std::string detail;  // failure diagnostics, or a short summary on success
  double seconds = 0;
  double budget = 0;   // wall-clock limit in seconds
};

// Suites: all, modforms, theta, structure, examples.
const std::vector<std::string>& suite_names();
// Throws std::invalid_argument for an unknown suite.
std::vector<int> criteria_in_suite(const std::string& suite);
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_suite(const std::string& suite,
                                       const std::function<void(const CriterionResult&)>& on_result = {});
// One line: "[PASS] 3 <title> (0.41 s)".
std::string format_result(const CriterionResult& r);

}  // namespace dq
