// Runs every acceptance criterion and prints one line each; nonzero exit if any fails.
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "dq/selftest.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty()) ids = dq::criteria_in_suite("all");
  int failed = 0;
  for (int id : ids) {
    dq::CriterionResult r = dq::run_criterion(id);
    std::cout << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << "  " << r.title << " ["
              << r.suite << ", " << r.seconds << " s of " << r.budget << " s]\n";
    std::istringstream in(r.detail);
    for (std::string line; std::getline(in, line);) std::cout << "    " << line << "\n";
    std::cout.flush();
    if (!r.pass) ++failed;
  }
  std::cout << (ids.size() - failed) << " of " << ids.size() << " criteria pass\n";
  return failed ? 1 : 0;
}
