#pragma once

#include "linalg.hpp"
#include "solution.hpp"

namespace sparseapprox {

// delta(A): the least |det| over invertible m x m column submatrices, together
// with the lexicographically smallest index set attaining it.
struct DeltaResult {
  Int value;
  std::vector<int> cols;
};

DeltaResult delta(const IntMat& a, long long budget = kDefaultBudget);

// Round a rational target onto the column lattice of D through its HNF:
// z_i = round((d_i - sum_{j<i} H(i,j) z_j) / H(i,i)), halves toward +inf.
// Guarantees |(Dx - d)_i| <= H(i,i)/2, hence ||Dx - d||_inf <= det/2.
struct HnfRoundResult {
  IntVec x;  // coefficients, length = cols of D
  RatVec residual;
  Rat error;
};

HnfRoundResult hnf_round(const IntMat& d, const RatVec& target);

// Greedy chain of column sublattices: start from a delta-minimizing basis and
// repeatedly adjoin the column whose enlarged lattice has least determinant
// (ties by lowest column index). Every strict step at least halves the
// determinant because the old lattice has index >= 2 in the new one.
struct SparseBasisChain {
  std::vector<int> columns;  // seed basis then adjoined columns, size min(k, n)
  std::vector<Int> dets;     // dets[0] = delta(A), one entry per chain prefix
  Rat certified_bound;       // dets.back() / 2
  bool exact = false;        // the chain lattice reached A Z^n
};

SparseBasisChain select_sparse_basis(const IntMat& a, int k, long long budget = kDefaultBudget);

// Sparse approximation over the integer lattice: b in A Z^n, |supp(x)| <= k,
// error ||Ax - b||_inf at most delta(A) / 2^(k-m+1).
SparseSolution approximate_lattice(const IntMat& a, const IntVec& b, int k,
                                   long long budget = kDefaultBudget);

}  // namespace sparseapprox
