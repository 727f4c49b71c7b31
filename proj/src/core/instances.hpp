#pragma once

#include <map>

#include "semigroup.hpp"

namespace sparseapprox {

// A claimed exact relation for an instance: quantity is one of "app"
// (worst-case k-sparse error), "app_basis" (same with the basis columns always
// allowed), or "delta" (least invertible submatrix determinant). dir is one of
// "le", "ge", "eq", and value is measured in the given norm.
struct Prediction {
  std::string quantity;
  int k = -1;  // sparsity the claim refers to, -1 when not applicable
  std::string dir;
  Rat value;
  NormTag norm = NormTag::linf;
};

// Portable description of a benchmark instance: the matrix, an optional basis
// (semigroup families), an optional hard target with optional witness, and
// the exact relations the generator certifies.
struct InstanceSpec {
  std::string family;
  std::map<std::string, Int> params;  // scalar parameters, seeds included
  std::vector<Int> primes;            // example2 only
  IntMat matrix;
  std::vector<int> basis;  // empty for pure lattice instances
  std::optional<IntVec> target;
  std::optional<IntVec> witness;
  std::vector<Prediction> predicted;

  // View as a semigroup instance; requires a non-empty basis.
  SemigroupInstance to_semigroup() const;
};

// m x 2m matrix with columns 2e_i, 3e_i. Every invertible submatrix picks one
// column per coordinate, so delta = 2^m, yet k = 2m-1 already forces error 1.
InstanceSpec gen_example1(int m);

// One-row gadget q_i = (prod of primes)/p_i lifted to m rows with unit columns
// e_2..e_m appended. The worst k-sparse error is floor(p_1...p_{m+n-1-k} / 2);
// the stored target attains it (rows 2..m are pushed one past the coset
// period so they eat k - 1 support slots).
InstanceSpec gen_example2(const std::vector<Int>& primes, int m, int k,
                          long long budget = kDefaultBudget);

// Knapsack family with a_1 = 2^k whose target b = 2^{k+1}(k+1) - 1 has a
// unique bounded representation using k+1 generators, so dropping to k
// non-zeros costs at least a_1 / 2^k = 1. Columns past k+1 are a strictly
// increasing tail above b controlled by tail_scale.
InstanceSpec gen_prop13(int k, int n, const Int& tail_scale = Int(1));

// Knapsack family built from the Sylvester sequence that is hard for k = 2:
// a_1 divides nothing useful and the remaining generators are tau * z_i + r_i
// with carefully split rationals r_i, scaled to integers. tau is doubled until
// the two certifying inequalities hold exactly (coefficient caps s_i below the
// Sylvester terms, and every basis-free pair staying strictly outside the
// claimed error). n = 3 falls back to the a_1 = 2^k family at k = 2.
InstanceSpec gen_prop14(int n);

// Two-row simplicial family whose non-basis columns straddle the diagonal of a
// huge square; any k <= n-1 columns miss the target by q/(n-1) in the norm of
// the basis parallelepiped, q = floor(sqrt(n-1)).
InstanceSpec gen_prop15(int n, int k);

// 2 x 4 instance whose designated basis spans the cone badly: with the basis
// fixed, three columns still leave error 2^{l-2} at b = a_3 + a_4 even though
// b is the plain sum of two columns.
InstanceSpec gen_example3(int l);

// Seeded random full-row-rank matrix with entries in [-entry_bound,
// entry_bound] plus a random integer witness and its target. Identical seeds
// give byte-identical instances.
InstanceSpec gen_random_lattice(int m, int n, const Int& entry_bound, unsigned long seed);

// Seeded random simplicial semigroup instance: invertible basis B with entries
// in [-entry_bound, entry_bound], non-basis columns B*w for small w >= 0, and
// a random non-negative witness with its target.
InstanceSpec gen_random_simplicial(int m, int n, const Int& entry_bound, unsigned long seed);

}  // namespace sparseapprox
