#pragma once

#include "matrix.hpp"

namespace sparseapprox {

enum class NormTag { linf, pnorm_b };

inline const char* norm_name(NormTag t) { return t == NormTag::linf ? "linf" : "pnorm"; }

// A k-sparse approximation x of b = A x together with its exact error and,
// when available, a rational certified bound the construction guarantees.
struct SparseSolution {
  IntVec x;
  std::vector<int> support;  // ascending indices of nonzero entries
  Rat error;
  NormTag norm = NormTag::linf;
  std::optional<Rat> certified_bound;
};

inline std::vector<int> support_of(const IntVec& x) {
  std::vector<int> s;
  for (int i = 0; i < int(x.size()); ++i)
    if (x[i] != 0) s.push_back(i);
  return s;
}

}  // namespace sparseapprox
