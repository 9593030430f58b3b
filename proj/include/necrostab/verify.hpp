#pragma once

// End-to-end property checks for one parameter set. Every check is recorded;
// a solver failure inside a check becomes a failed record, never an exception.

#include <string>
#include <vector>

#include "necrostab/radial.hpp"

namespace necrostab::verify {

struct CheckRecord {
  std::string name;
  std::string group;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  int kmax = 200;           // spectrum range
  int ordering_kmax = 50;   // mode-profile properties
  int grid = 1000;          // interior sample points
};

struct VerifyReport {
  std::vector<CheckRecord> checks;
  bool all_pass() const;
  std::size_t failures() const;
};

VerifyReport verify_suite(const radial::ModelParams& params, const VerifyOptions& opt = {});

}  // namespace necrostab::verify
