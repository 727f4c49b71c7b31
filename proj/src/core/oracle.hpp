#pragma once

#include "semigroup.hpp"

namespace sparseapprox {

// Enumeration effort counters reported by the oracle sweeps.
struct EnumStats {
  long long cosets = 0;    // worst-case targets visited
  long long supports = 0;  // candidate supports considered
  long long nodes = 0;     // search nodes across all inner enumerations
};

// Exact worst-case value together with the target and support attaining it.
// witness_b is the lexicographically smallest maximizer; witness_support is
// the first support (in subset order) reaching the minimum at that target.
struct OracleReport {
  Rat value;
  IntVec witness_b;
  std::vector<int> witness_support;
  EnumStats stats;
};

struct CvpResult {
  IntVec x;
  Rat dist;
};

// Exact closest vector: minimize ||D x - target||_inf over integer x, by
// depth-first search over the triangular HNF coordinates seeded with the
// rounding radius. The distance never exceeds hnf_round's error.
CvpResult cvp_linf(const IntMat& d, const RatVec& target, long long budget = kDefaultBudget);

// Exact worst case over targets of the best k-sparse integer approximation.
// Per target the objective is the min over full-row-rank supports of size k of
// the distance to the support's lattice; it is invariant under translating the
// target by M e_i where M is the lcm of the support lattice determinants,
// because det(L) Z^m is always contained in L. The sweep therefore covers the
// finitely many points of A Z^n inside [0, M)^m.
OracleReport lattice_app(const IntMat& a, int k, long long budget = kDefaultBudget);

// The per-target objective above at one explicit target.
Rat lattice_dist(const IntMat& a, const IntVec& b, int k, long long budget = kDefaultBudget);

// The sweep modulus M for the given support size.
Int lattice_period(const IntMat& a, int k, long long budget = kDefaultBudget);

// Worst case over the finitely many semigroup targets with coefficient sum at
// most |det B|. With basis_fixed the basis columns are free, only non-basis
// columns count against k, and the sweep over non-basis sums is provably the
// exact worst case; without it plain k-sparsity applies and the sweep also
// keeps basis multiples within the sum, covering the known hard targets.
// Distances use the P(B) norm.
OracleReport semigroup_app(const SemigroupInstance& inst, int k, bool basis_fixed,
                           long long budget = kDefaultBudget);

// Exact best sparse non-negative approximation of one target, by support
// enumeration with derived coefficient caps: any solution within the plain
// basis-rounding error keeps each coefficient below a bound obtained row by
// row, starting from rows whose negative contributors are already bounded.
Rat semigroup_dist(const SemigroupInstance& inst, const IntVec& b, int k, bool basis_fixed,
                   long long budget = kDefaultBudget);

// Exact maximum antichain of the grid poset {0..s}^m under the componentwise
// order, via minimum chain cover (grid size minus a maximum bipartite matching
// on the comparability relation).
long long max_antichain(int m, int s, long long budget = kDefaultBudget);

// True iff the all-ones vector is the unique non-negative representation of b
// with coefficient sum at most max_coeff_sum, by exhaustive enumeration.
bool verify_unique_representation(const IntVec& a, const Int& b, const Int& max_coeff_sum,
                                  long long budget = kDefaultBudget);

}  // namespace sparseapprox
