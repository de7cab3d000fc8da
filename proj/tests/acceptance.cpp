// Runs the acceptance battery with the default config and prints one line
// per criterion. Exit status is nonzero if any criterion fails.
#include "graftlab/verify.hpp"

#include <iostream>

int main() {
  using namespace graftlab;
  verify::VerifyConfig cfg;
  auto report = verify::run_verify(cfg);
  // Criterion order, independent of the report's name order.
  const char* order[] = {"holonomy-invariance", "bilipschitz-bending", "fold-counterexample", "right-triangle",
                         "fan-area",            "gauss-bonnet",        "multiarc-integrality", "switch-assembly",
                         "bending-equivariance", "2pi-invisibility",   "thurston-K",          "traintrack-geometry"};
  int failed = 0, index = 0;
  for (const char* name : order) {
    ++index;
    auto it = std::find_if(report.suites.begin(), report.suites.end(),
                           [&](const verify::SuiteReport& s) { return s.suite == name; });
    if (it == report.suites.end()) {
      std::cout << "AC" << index << ' ' << name << ": FAIL (suite missing)\n";
      ++failed;
      continue;
    }
    bool pass = it->pass();
    failed += pass ? 0 : 1;
    std::cout << "AC" << index << ' ' << name << ": " << (pass ? "PASS" : "FAIL");
    if (!it->error.empty()) std::cout << " (error: " << it->error << ')';
    for (const auto& c : it->checks) {
      if (!c.pass) std::cout << " [" << c.name << ": " << c.measured << ' ' << to_string(c.relation) << ' ' << c.bound << " fails]";
    }
    std::cout << '\n';
  }
  std::cout << (12 - failed) << "/12 criteria pass\n";
  return failed == 0 ? 0 : 1;
}
