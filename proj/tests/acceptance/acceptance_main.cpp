// Acceptance run: one line per criterion, exit status 0 iff every gated one passes.
// Set NONLOCAL_ACCEPTANCE_OPTIONAL=1 to add the slow informational study.
#include <cstdlib>
#include <iostream>
#include <string>

#include "nonlocal_experiments/experiments.hpp"

int main(int argc, char** argv) {
  using namespace nonlocal::experiments;
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::stoi(argv[i]));
  if (ids.empty()) {
    ids = {1, 2, 3, 4, 5, 6, 7, 8, 9};
    const char* opt = std::getenv("NONLOCAL_ACCEPTANCE_OPTIONAL");
    if (opt && std::string(opt) == "1") ids.push_back(kOptionalFixedHorizon);
  }
  bool ok = true;
  run_acceptance(ids, [&](const CriterionResult& r) {
    std::cout << format_result(r) << std::endl;
    if (r.gated && !r.passed) ok = false;
  });
  return ok ? 0 : 1;
}
