// Acceptance suite: one pass/fail line per criterion.

#include <cstdio>
#include <cstring>
#include <string>

#include "mlgeo/reproduce.hpp"

int main(int argc, char** argv) {
  std::string tier = "all";
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--tier") == 0 && i + 1 < argc) tier = argv[++i];
  }

  auto results = mlgeo::accept::run(tier);
  int failures = 0;
  for (const auto& r : results) {
    std::printf("[%s] %-36s %-8s %7.1fs  %s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(),
                r.tier.c_str(), r.seconds, r.detail.c_str());
    if (!r.pass) ++failures;
  }
  std::printf("%zu checks, %d failures\n", results.size(), failures);
  return failures == 0 ? 0 : 1;
}
