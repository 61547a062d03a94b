#include <cstdio>
#include <exception>

#include "ncmult_tools/acceptance.hpp"

int main() {
  using namespace ncmult::tools;
  try {
    const AcceptanceOutcome outcome = full_acceptance(AcceptanceOptions{});
    int passed = 0;
    for (const auto& r : outcome.results) {
      std::printf("%s\n", summary_line(r, true).c_str());
      passed += r.pass();
    }
    std::printf("%d/%zu criteria pass\n", passed, outcome.results.size());
    return outcome.pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance aborted: %s\n", e.what());
    return 1;
  }
}
