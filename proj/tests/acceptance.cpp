// Acceptance suite: runs every verification check at its pinned parameters
// and prints one pass/fail line per criterion. Exit code 0 iff all pass.

#include <cstdio>
#include <thread>

#include "fatpoints/verification.hpp"

int main() {
  fatpoints::VerifyOptions opts;
  opts.r_min = 1;
  opts.r_max = 3;
  opts.seeds = 100;
  const unsigned hw = std::thread::hardware_concurrency();
  opts.jobs = static_cast<int>(hw == 0 ? 1 : (hw > 8 ? 8 : hw));

  const auto results = fatpoints::run_verification(opts);
  bool all_pass = true;
  int idx = 0;
  for (const auto& r : results) {
    ++idx;
    std::printf("%s  %2d %-32s %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", idx, r.name.c_str(),
                r.details.c_str(), r.seconds);
    all_pass = all_pass && r.pass;
  }
  std::printf("%s\n", all_pass ? "acceptance: all criteria passed" : "acceptance: FAILURES");
  return all_pass ? 0 : 1;
}
