#pragma once

#include <climits>

#include "json_io.hpp"

namespace sparseapprox {

// One verification row: an instance at sparsity k, the error our construction
// achieved, the bound it certifies (or the generator's predicted value for
// the hard families), and the exhaustive oracle's exact value when affordable.
struct ReportRow {
  std::string instance;
  int m = 0;
  int n = 0;
  int k = 0;
  std::optional<Rat> alg_error;
  std::optional<Rat> bound;
  std::optional<Rat> oracle;
  std::string verdict;  // OK | VIOLATION | SKIPPED-budget
};

struct SweepOptions {
  std::vector<std::string> families;  // empty = every family
  int k_min = INT_MIN;                // inclusive sparsity filter
  int k_max = INT_MAX;
  int random_count = 25;  // instances per random family
  unsigned long seed = 1;
  long long budget = kDefaultBudget;
};

// Run the verification sweeps for the selected families and return the rows
// sorted by (instance, k). Unknown family names are rejected.
std::vector<ReportRow> run_sweeps(const SweepOptions& opt);

bool has_violation(const std::vector<ReportRow>& rows);

std::string report_to_csv(const std::vector<ReportRow>& rows);
Json report_to_json(const std::vector<ReportRow>& rows);

}  // namespace sparseapprox
