#pragma once
#include <string>
#include <vector>

#include "dirac_lab/config.hpp"

namespace dlab {

struct CheckResult {
  std::string suite;
  std::string name;
  double measured = 0;
  double tolerance = 0;
  bool pass = false;
  std::string note;
};

// suite: identities, bessel, bounds or all
std::vector<CheckResult> run_verify(const std::string& suite, const Config& cfg);

}  // namespace dlab
