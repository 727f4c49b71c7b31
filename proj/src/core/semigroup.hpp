#pragma once

#include "lattice.hpp"

namespace sparseapprox {

// A semigroup instance: generator matrix A plus a distinguished invertible
// basis among its columns. mu is the largest ||B^{-1} a_i||_inf; the instance
// is simplicial when every column lies in the cone spanned by the basis.
struct SemigroupInstance {
  IntMat a;
  std::vector<int> basis;  // m strictly increasing column indices
  Int det_b;               // |det B|
  Rat mu;
  bool simplicial = false;

  static SemigroupInstance make(IntMat a, std::vector<int> basis);

  int m() const { return a.rows(); }
  int n() const { return a.cols(); }
  IntMat basis_mat() const { return a.select_cols(basis); }
  bool is_basis_col(int j) const;
};

// Sparse non-negative approximation when the columns positively span R^m:
// run the lattice chain on k - m columns, then repair negative entries by
// lifting along a Caratheodory subcone; error is untouched by the lift.
SparseSolution approximate_spanning(const IntMat& a, const IntVec& b, int k,
                                    long long budget = kDefaultBudget);

// Shrink a non-negative non-basis representation until its coefficient sum is
// at most |det B|: two partial sums in the same residue class mod B Z^m bound
// a block that is a non-negative integer basis combination; remove the block
// and credit its value to the basis.
struct ReduceResult {
  IntVec lambda;  // full length n, still zero on basis indices
  IntVec credit;  // length m, non-negative basis coefficients gained
};

ReduceResult reduce_to_s(const SemigroupInstance& inst, IntVec lambda,
                         long long budget = kDefaultBudget);

// One support-reduction step: among subset sums of the weighted generators
// lambda_i * a_i, find two whose difference is a near-integer basis
// combination and merge them, dropping at least one generator. The accepted
// pair must satisfy increment^m * 2^s <= (mu |det B|)^(m-1), the width of the
// tile refinement at the current support size s.
struct MergeStep {
  IntVec lambda;           // updated non-basis coefficients, full length n
  IntVec basis_add;        // length m, non-negative
  Rat increment;           // ||shift||_{P(B)} introduced by the merge
  int support_before = 0;  // non-basis support size the step ran at
};

MergeStep reduce_support_once(const SemigroupInstance& inst, const IntVec& lambda,
                              long long budget = kDefaultBudget);

// Full semigroup approximation: alternate coefficient-sum reduction and
// support merges until at most k - m non-basis generators remain, then keep
// the better of the construction and plain basis rounding.
struct SemigroupSolution {
  SparseSolution sol;
  // One (support size, increment) certificate per merge; support sizes are
  // strictly decreasing and the total error is at most the increment sum.
  std::vector<std::pair<int, Rat>> steps;
};

SemigroupSolution approximate_semigroup(const SemigroupInstance& inst, const IntVec& b, int k,
                                        const std::optional<IntVec>& witness = std::nullopt,
                                        long long budget = kDefaultBudget);

// k = 2 integer knapsack: best lambda * a_1 + mu * a_i over all generators i
// and multiplicities mu in [0, b / a_i], lambda >= 0 rounded to fit.
SparseSolution approximate_k2(const IntVec& a, const Int& b,
                              const std::optional<IntVec>& witness = std::nullopt,
                              long long budget = kDefaultBudget);

// Partial sums of the reciprocals of Sylvester's sequence 2, 6, 42, 1806, ...
Rat sylvester_phi(int n);

// Least n such that every deeper instance with these mu and |det B| is exactly
// representable on n - 1 columns: smallest n with 2^(n-m) strictly above
// mu^(m-1) |det B|^(2m-1).
int exact_threshold(const SemigroupInstance& inst);

// Bounded exhaustive search for a non-negative integer witness A x = b.
std::optional<IntVec> find_witness(const SemigroupInstance& inst, const IntVec& b,
                                   long long budget = kDefaultBudget);

// Geometric-series bound on the accumulated merge error when going from n
// columns down to k: sum over s in (k-m, n-m] of ((mu det B)^(m-1)/2^s)^(1/m).
// The comparison is exact: rational for m = 1, nested square roots for m = 2,
// and a certified dyadic enclosure (conservative on ties) for larger m.
bool within_merge_bound(const SemigroupInstance& inst, int k, const Rat& error);

// Rational upper enclosure of the same bound, suitable for reports.
Rat merge_bound_upper(const SemigroupInstance& inst, int k, int bits = 64);

}  // namespace sparseapprox
