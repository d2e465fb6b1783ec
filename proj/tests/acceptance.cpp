// One PASS/FAIL line per acceptance criterion; exit 1 if any fails.
// Usage: acceptance [--tighten F] [--threads N] [name-or-tag ...]

#include <cstdio>
#include <cstdlib>
#include <string>

#include "semirad/verify.hpp"

int main(int argc, char** argv) {
  semirad::verify::Options opt;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--tighten" && i + 1 < argc) {
      opt.tighten = std::atof(argv[++i]);
    } else if (a == "--threads" && i + 1 < argc) {
      opt.threads = std::atoi(argv[++i]);
    } else {
      opt.only.push_back(a);
    }
  }
  int failed = 0;
  try {
    for (const auto& c : semirad::verify::run(opt)) {
      std::printf("%s\n", semirad::verify::format_line(c).c_str());
      std::fflush(stdout);
      failed += c.pass ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance: %s\n", e.what());
    return 2;
  }
  return failed == 0 ? 0 : 1;
}
