// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Exit status is nonzero when any criterion fails.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "cppforge/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  bool verbose = false;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "-v") {
      verbose = true;
    } else {
      ids.push_back(std::atoi(arg.c_str()));
    }
  }
  cppforge::AcceptanceOptions options;
  if (verbose) options.log = &std::cerr;
  const auto results = cppforge::run_acceptance(ids, options);
  bool ok = true;
  for (const auto& r : results) {
    std::cout << cppforge::format_result(r) << '\n';
    for (const auto& note : r.notes) std::cout << "    " << note << '\n';
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}
