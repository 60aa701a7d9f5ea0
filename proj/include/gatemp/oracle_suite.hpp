#pragma once

#include <string>
#include <vector>

#include "gatemp/rng.hpp"

namespace gatemp {

// One small-N comparison between two independent routes to the same number.
struct OracleCheck {
  std::string name;
  bool passed = false;
  double discrepancy = 0.0;
  double tolerance = 0.0;
};

std::vector<OracleCheck> run_oracle_suite(Seed seed = 7);

// One "PASS name discrepancy tolerance" line per check.
std::string format_oracle_report(const std::vector<OracleCheck>& checks);

}  // namespace gatemp
