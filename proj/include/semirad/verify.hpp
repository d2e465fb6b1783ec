#pragma once

#include <string>
#include <vector>

namespace semirad::verify {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;  // observed vs expected and tolerance
  double seconds = 0.0;
  double limit_seconds = 0.0;
};

struct Options {
  double tighten = 1.0;            // every tolerance is divided by this factor
  std::vector<std::string> only;   // criterion names or module tags; empty runs all
  int threads = 1;
};

struct Criterion {
  std::string name;
  std::vector<std::string> tags;
  double limit_seconds;
};

const std::vector<Criterion>& criteria();

// Runs the selected acceptance criteria; unknown names in `only` throw.
std::vector<Check> run(const Options& opt);

std::string format_line(const Check& c);

}  // namespace semirad::verify
