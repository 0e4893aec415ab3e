// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

#include "regen/parallel.hpp"
#include "regen/suite.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 20261015;
  unsigned threads = regen::default_threads();
  if (argc > 1) seed = std::stoull(argv[1]);
  if (argc > 2) threads = static_cast<unsigned>(std::stoul(argv[2]));
  std::cout << "seed " << seed << ", threads " << threads << "\n";
  const auto rs = regen::run_acceptance(seed, threads, [](const regen::CheckResult& r) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << std::endl;
  });
  int failed = 0;
  for (const auto& r : rs) failed += r.passed ? 0 : 1;
  std::cout << (rs.size() - failed) << "/" << rs.size() << " criteria passed\n";
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
