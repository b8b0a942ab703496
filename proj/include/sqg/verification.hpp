#pragma once

#include <string>
#include <vector>

namespace sqg {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

// The executable form of the acceptance suite; quick mode shortens the
// simulated horizons but exercises every check.
std::vector<CriterionResult> run_acceptance(bool quick);

struct OperatorsRow {
  int quad_lmax = 0;
  double semigroup_rel_err = 0.0;
  double singular_rel_err = 0.0;
};

// Three-way operator comparison table on Re Y_{degree, min(degree,3)}.
std::vector<OperatorsRow> operators_table(double alpha, int degree,
                                          const std::vector<int>& quad_ls);

}  // namespace sqg
