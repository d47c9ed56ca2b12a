// Runs criteria 1..9 on the default instance and prints one line per criterion.
// With --stretch, also the structural criteria on larger instances.
#include <cstdio>
#include <cstring>
#include <exception>

#include "sovsg/commands.hpp"
#include "sovsg/errors.hpp"

using namespace sovsg;

namespace {

int run(const RunConfig& cfg, bool structural_only, const char* tag) {
  int failures = 0;
  std::vector<CriterionResult> results;
  try {
    results = run_acceptance(cfg, structural_only);
  } catch (const std::exception& e) {
    std::printf("FAIL [%s] aborted: %s\n", tag, e.what());
    return 1;
  }
  for (const auto& r : results) {
    const bool ok = r.passed();
    failures += ok ? 0 : 1;
    std::printf("%s [%s] criterion %d %s (%.3fs / %.0fs)\n", ok ? "PASS" : "FAIL", tag, r.id,
                r.title.c_str(), r.seconds, r.time_limit);
    if (!ok)
      for (const auto& c : r.report.checks())
        if (!c.pass && !c.soft) std::printf("     failed check %s value %.3e tol %.3e\n", c.name.c_str(), c.value, c.tolerance);
  }
  return failures;
}

}  // namespace

int main(int argc, char** argv) {
  const bool stretch = argc > 1 && std::strcmp(argv[1], "--stretch") == 0;
  int failures = 0;
  RunConfig cfg;  // p = 3, p' = 2, N = 3, seed 7
  failures += run(cfg, false, "p=3 N=3");
  if (stretch) {
    RunConfig a;
    a.p = 5;
    failures += run(a, true, "p=5 N=3");
    RunConfig b;
    b.n_sites = 5;
    failures += run(b, true, "p=3 N=5");
  }
  std::printf("%s: %d failing criteria\n", failures == 0 ? "PASS" : "FAIL", failures);
  return failures == 0 ? 0 : 1;
}
