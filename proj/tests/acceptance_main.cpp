// Runs every acceptance criterion and prints one PASS/FAIL line for each.
// Exit status is nonzero when any criterion fails.
//
//   acceptance                  default criteria
//   acceptance --extended       default criteria plus the full-scale census
//   acceptance --extended-only  only the full-scale census

#include <algorithm>
#include <iostream>
#include <string_view>

#include "primebias/acceptance.hpp"

int main(int argc, char** argv) {
  primebias::AcceptanceOptions options;
  for (int i = 1; i < argc; ++i) {
    const std::string_view arg = argv[i];
    if (arg == "--extended") {
      options.include_extended = true;
    } else if (arg == "--extended-only") {
      options.extended_only = true;
    } else {
      std::cerr << "unknown argument: " << arg << '\n';
      return 1;
    }
  }
  options.log = &std::cout;

  const auto results = primebias::run_acceptance(options);
  const auto failed = std::count_if(results.begin(), results.end(),
                                    [](const auto& r) { return !r.passed; });
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
