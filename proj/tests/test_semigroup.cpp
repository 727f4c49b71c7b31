#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "core/semigroup.hpp"

using namespace sparseapprox;

namespace {

Int draw(std::mt19937_64& gen, long lo, long hi) {
  unsigned long span = static_cast<unsigned long>(hi - lo + 1);
  return Int(lo + long(gen() % span));
}

SemigroupInstance knapsack(std::initializer_list<Int> a) {
  IntMat mat(1, int(a.size()));
  int j = 0;
  for (const Int& v : a) mat.at(0, j++) = v;
  return SemigroupInstance::make(mat, {0});
}

Rat residual_pnorm(const SemigroupInstance& inst, const IntVec& x, const IntVec& b) {
  IntVec ax = mat_vec(inst.a, x);
  RatVec diff(ax.size());
  for (size_t i = 0; i < ax.size(); ++i) diff[i] = Rat(ax[i] - b[i]);
  return pnorm(inst.basis_mat(), diff);
}

// Every non-negative lambda with the given coefficient sum bound, recursively.
void all_witnesses(int n, int budget, IntVec& cur, std::vector<IntVec>& out) {
  if (int(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  for (int v = 0; v <= budget; ++v) {
    cur.push_back(Int(v));
    all_witnesses(n, budget - v, cur, out);
    cur.pop_back();
  }
}

std::vector<IntVec> witnesses_up_to(int n, int sum) {
  std::vector<IntVec> out;
  IntVec cur;
  all_witnesses(n, sum, cur, out);
  return out;
}

}  // namespace

TEST_CASE("instance classification") {
  SemigroupInstance m1 = knapsack({4, 9, 10, 11});
  CHECK(m1.det_b == 4);
  CHECK(m1.mu == Rat(11, 4));
  CHECK(m1.simplicial);

  SemigroupInstance m2 =
      SemigroupInstance::make(IntMat{{2, 0, 1}, {0, 2, 1}}, {0, 1});
  CHECK(m2.det_b == 4);
  CHECK(m2.mu == Rat(1));  // the basis columns themselves have unit norm
  CHECK(m2.simplicial);

  // A column outside the basis cone is not simplicial.
  SemigroupInstance bad =
      SemigroupInstance::make(IntMat{{1, 0, -1}, {0, 1, 2}}, {0, 1});
  CHECK_FALSE(bad.simplicial);

  CHECK_THROWS_AS(SemigroupInstance::make(IntMat{{1, 2}, {2, 4}}, {0, 1}), Error);
  CHECK_THROWS_AS(SemigroupInstance::make(IntMat{{1, 2}}, {0, 0}), Error);
}

TEST_CASE("spanning approximation on a line") {
  SparseSolution s = approximate_spanning(IntMat{{1, -1}}, IntVec{-5}, 2);
  CHECK(s.x == IntVec{0, 5});
  CHECK(s.error == Rat(0));
}

TEST_CASE("spanning approximation with a Caratheodory lift") {
  IntMat a{{1, 0, -1}, {0, 1, -1}};
  SparseSolution s = approximate_spanning(a, IntVec{-1, -1}, 4);
  CHECK(s.error == Rat(0));
  CHECK(mat_vec(a, s.x) == IntVec{-1, -1});
  for (const Int& v : s.x) CHECK(v >= 0);
  CHECK(int(s.support.size()) <= 4);
}

TEST_CASE("spanning validation") {
  try {
    approximate_spanning(IntMat{{1, 0}, {0, 1}}, IntVec{0, 0}, 4);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_spanning);
  }
  try {
    approximate_spanning(IntMat{{1, -1}}, IntVec{0}, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::bad_k);
  }
}

TEST_CASE("spanning bound on random instances") {
  std::mt19937_64 gen(37);
  int done = 0;
  while (done < 15) {
    IntMat a(2, 6);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 6; ++j) a.at(i, j) = draw(gen, -5, 5);
    IntVec w(6);
    for (int j = 0; j < 6; ++j) w[j] = draw(gen, -3, 3);
    IntVec b = mat_vec(a, w);
    SparseSolution s;
    try {
      s = approximate_spanning(a, b, 5);
    } catch (const Error&) {
      continue;
    }
    for (const Int& v : s.x) CHECK(v >= 0);
    CHECK(int(s.support.size()) <= 5);
    Rat bound = Rat(delta(a).value) / Rat(4);
    IntVec ax = mat_vec(a, s.x);
    RatVec diff{Rat(ax[0] - b[0]), Rat(ax[1] - b[1])};
    CHECK(linf_norm(diff) == s.error);
    CHECK(s.error <= bound);
    ++done;
  }
}

TEST_CASE("reduce_to_s shrinks the coefficient sum to det B") {
  SemigroupInstance inst = knapsack({4, 9});
  ReduceResult r = reduce_to_s(inst, IntVec{0, 5});
  CHECK(r.lambda == IntVec{0, 1});
  CHECK(r.credit == IntVec{9});

  SemigroupInstance sq =
      SemigroupInstance::make(IntMat{{2, 0, 1}, {0, 2, 1}}, {0, 1});
  ReduceResult r2 = reduce_to_s(sq, IntVec{0, 0, 6});
  CHECK(r2.lambda == IntVec{0, 0, 4});
  CHECK(r2.credit == IntVec{1, 1});

  // Already small enough: identity with zero credit.
  ReduceResult r3 = reduce_to_s(inst, IntVec{0, 3});
  CHECK(r3.lambda == IntVec{0, 3});
  CHECK(r3.credit == IntVec{0});
}

TEST_CASE("reduce_to_s conservation on random instances") {
  std::mt19937_64 gen(41);
  for (int t = 0; t < 25; ++t) {
    // Simplicial by construction: non-basis columns are B w with w >= 0.
    IntMat b22{{2, 1}, {0, 3}};
    IntMat a(2, 5);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) a.at(i, j) = b22.at(i, j);
    for (int j = 2; j < 5; ++j) {
      IntVec w{draw(gen, 0, 2), draw(gen, 0, 2)};
      a.set_col(j, mat_vec(b22, w));
    }
    SemigroupInstance inst = SemigroupInstance::make(a, {0, 1});
    REQUIRE(inst.simplicial);

    IntVec lambda(5, Int(0));
    for (int j = 2; j < 5; ++j) lambda[j] = draw(gen, 0, 6);
    ReduceResult r = reduce_to_s(inst, lambda);

    Int total(0);
    for (int j = 0; j < 5; ++j) {
      CHECK(r.lambda[j] >= 0);
      total += r.lambda[j];
    }
    CHECK(total <= inst.det_b);
    for (const Int& c : r.credit) CHECK(c >= 0);

    IntVec lhs = mat_vec(inst.a, r.lambda);
    IntVec credit_part = mat_vec(inst.basis_mat(), r.credit);
    IntVec rhs = mat_vec(inst.a, lambda);
    for (int i = 0; i < 2; ++i) CHECK(lhs[i] + credit_part[i] == rhs[i]);
  }
}

TEST_CASE("reduce_to_s validation") {
  SemigroupInstance inst = knapsack({4, 9});
  try {
    reduce_to_s(inst, IntVec{0, -1});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::bad_input);
  }
  try {
    reduce_to_s(inst, IntVec{1, 0});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::bad_input);
  }
  try {
    reduce_to_s(inst, IntVec{0, 50}, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::budget_exceeded);
  }
}

TEST_CASE("reduce_support_once merges within the tile width") {
  SemigroupInstance inst = knapsack({4, 9, 10, 11});
  IntVec lambda{0, 1, 1, 1};
  MergeStep ms = reduce_support_once(inst, lambda);
  CHECK(ms.support_before == 3);

  int support_after = 0;
  for (int j = 0; j < 4; ++j) {
    CHECK(ms.lambda[j] >= 0);
    if (j != 0 && ms.lambda[j] != 0) ++support_after;
  }
  CHECK(support_after <= 2);
  CHECK(ms.lambda[0] == 0);

  // Acceptance threshold at support 3 for m = 1: increment <= 1/8.
  CHECK(ms.increment * Rat(8) <= Rat(1));

  // The merge shifts the represented point by exactly the increment.
  IntVec before = mat_vec(inst.a, lambda);
  IntVec after = mat_vec(inst.a, ms.lambda);
  IntVec credit = mat_vec(inst.basis_mat(), ms.basis_add);
  RatVec diff{Rat(after[0] + credit[0] - before[0])};
  CHECK(pnorm(inst.basis_mat(), diff) == ms.increment);
}

TEST_CASE("approximate_semigroup with k = n returns the witness exactly") {
  SemigroupInstance inst = knapsack({4, 9, 10, 11});
  IntVec w{1, 1, 0, 2};
  IntVec b = mat_vec(inst.a, w);
  SemigroupSolution s = approximate_semigroup(inst, b, 4, w);
  CHECK(s.sol.error == Rat(0));
  CHECK(s.sol.x == w);
  CHECK(s.steps.empty());
}

TEST_CASE("approximate_semigroup meets the geometric bound at k = 2") {
  SemigroupInstance inst = knapsack({4, 9, 10, 11});
  Rat bound = merge_bound_upper(inst, 2);
  CHECK(bound == Rat(3, 8));

  for (const IntVec& w : witnesses_up_to(4, 4)) {
    IntVec b = mat_vec(inst.a, w);
    SemigroupSolution s = approximate_semigroup(inst, b, 2, w);
    CHECK(s.sol.norm == NormTag::pnorm_b);
    CHECK(int(s.sol.support.size()) <= 2);
    for (const Int& v : s.sol.x) CHECK(v >= 0);
    CHECK(residual_pnorm(inst, s.sol.x, b) == s.sol.error);
    CHECK(s.sol.error <= bound);
    CHECK(within_merge_bound(inst, 2, s.sol.error));
    REQUIRE(s.sol.certified_bound.has_value());
    CHECK(*s.sol.certified_bound == bound);

    // Basis rounding alone guarantees 1/2.
    CHECK(s.sol.error * Rat(2) <= Rat(1));

    // Merge certificates: strictly decreasing supports, increments sum to at
    // least the constructed error.
    if (!s.steps.empty()) {
      Rat total(0);
      for (size_t i = 0; i < s.steps.size(); ++i) {
        if (i > 0) CHECK(s.steps[i].first < s.steps[i - 1].first);
        CHECK(s.steps[i].second * Rat(pow2(unsigned(s.steps[i].first))) <= Rat(1));
        total += s.steps[i].second;
      }
      CHECK(s.sol.error <= total);
    }
  }
}

TEST_CASE("approximate_semigroup validation") {
  SemigroupInstance inst = knapsack({4, 9, 10, 11});
  try {
    approximate_semigroup(inst, IntVec{1}, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::no_witness);
  }
  try {
    approximate_semigroup(inst, IntVec{23}, 2, IntVec{1, 1, 1, 1});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::bad_input);
  }
  try {
    approximate_semigroup(inst, IntVec{23}, 0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::bad_k);
  }
}

TEST_CASE("approximate_k2 on small knapsacks") {
  // 23 = 3 * 4 + 11, so four generators reach the target with two columns.
  IntVec a{4, 9, 10, 11};
  SparseSolution s = approximate_k2(a, Int(23), IntVec{1, 1, 1, 0});
  CHECK(s.error == Rat(0));
  CHECK(s.norm == NormTag::linf);
  CHECK(int(s.support.size()) <= 2);
  REQUIRE(s.certified_bound.has_value());
  CHECK(*s.certified_bound == Rat(8, 7));

  // Without the 11 column the best two-column value is 22 or 24.
  SparseSolution off = approximate_k2(IntVec{4, 9, 10}, Int(23), IntVec{1, 1, 1});
  CHECK(off.error == Rat(1));
  CHECK(*off.certified_bound == Rat(1));
  CHECK(off.error <= *off.certified_bound);

  // Multiples of a_1 are hit exactly.
  SparseSolution exact = approximate_k2(a, Int(24), IntVec{6, 0, 0, 0});
  CHECK(exact.error == Rat(0));

  try {
    approximate_k2(IntVec{9, 4}, Int(13));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::bad_input);
  }
}

TEST_CASE("approximate_k2 bound on random sorted instances") {
  std::mt19937_64 gen(43);
  for (int t = 0; t < 40; ++t) {
    int n = 3 + int(draw(gen, 0, 5).get_si());
    IntVec a(n);
    for (int j = 0; j < n; ++j) a[j] = draw(gen, 1, 200);
    std::sort(a.begin(), a.end());
    IntVec w(n, Int(0));
    int budget = 6;
    for (int j = 0; j < n && budget > 0; ++j) {
      long c = long(draw(gen, 0, budget).get_si());
      w[j] = c;
      budget -= int(c);
    }
    Int b(0);
    for (int j = 0; j < n; ++j) b += w[j] * a[j];

    SparseSolution s = approximate_k2(a, b, w);
    Rat phi = sylvester_phi(n - 2);
    CHECK(s.error <= phi / (2 * phi + 1) * Rat(a[0]));
    CHECK(int(s.support.size()) <= 2);
    for (const Int& v : s.x) CHECK(v >= 0);
    Int ax(0);
    for (int j = 0; j < n; ++j) ax += s.x[j] * a[j];
    CHECK(rat_abs(Rat(ax - b)) == s.error);
  }
}

TEST_CASE("sylvester reciprocal sums") {
  CHECK(sylvester_phi(0) == Rat(0));
  CHECK(sylvester_phi(1) == Rat(1, 2));
  CHECK(sylvester_phi(2) == Rat(2, 3));
  CHECK(sylvester_phi(3) == Rat(29, 42));
  // One more term: t_4 = 42 * 43 = 1806.
  CHECK(sylvester_phi(4) == Rat(29, 42) + Rat(1, 1806));
}

TEST_CASE("exact representability threshold") {
  CHECK(exact_threshold(knapsack({4, 9})) == 4);
  CHECK(exact_threshold(knapsack({1, 2})) == 2);
  CHECK(exact_threshold(knapsack({2, 3})) == 3);

  // mu = 2, |det B| = 3: least n with 2^(n-2) > 2 * 27.
  SemigroupInstance inst =
      SemigroupInstance::make(IntMat{{1, 0, 2}, {0, 3, 0}}, {0, 1});
  CHECK(inst.mu == Rat(2));
  CHECK(inst.det_b == 3);
  CHECK(exact_threshold(inst) == 8);
}

TEST_CASE("find_witness") {
  SemigroupInstance inst = knapsack({4, 9, 10, 11});
  auto w = find_witness(inst, IntVec{23});
  REQUIRE(w.has_value());
  Int dot(0);
  for (int j = 0; j < 4; ++j) dot += (*w)[j] * inst.a.at(0, j);
  CHECK(dot == 23);
  CHECK_FALSE(find_witness(inst, IntVec{1}).has_value());
  CHECK_FALSE(find_witness(inst, IntVec{-4}).has_value());
}

TEST_CASE("merge bound comparison is exact") {
  SemigroupInstance m1 = knapsack({4, 9, 10, 11});
  CHECK(merge_bound_upper(m1, 2) == Rat(3, 8));
  CHECK(merge_bound_upper(m1, 3) == Rat(1, 8));
  CHECK(merge_bound_upper(m1, 4) == Rat(0));
  CHECK(within_merge_bound(m1, 2, Rat(3, 8)));
  CHECK_FALSE(within_merge_bound(m1, 2, Rat(3, 8) + Rat(1, 1000)));

  // m = 2 with mu = det B = 1: the k = 2 bound is 1/sqrt(2).
  SemigroupInstance m2 =
      SemigroupInstance::make(IntMat{{1, 0, 1}, {0, 1, 1}}, {0, 1});
  CHECK(within_merge_bound(m2, 2, Rat(7, 10)));
  CHECK(within_merge_bound(m2, 2, Rat(707, 1000)));
  CHECK_FALSE(within_merge_bound(m2, 2, Rat(708, 1000)));
  CHECK_FALSE(within_merge_bound(m2, 2, Rat(71, 100)));
  CHECK(merge_bound_upper(m2, 2) >= Rat(707106, 1000000));

  // m = 3: the k = 3 bound is 2^(-1/3), certified through a dyadic enclosure.
  SemigroupInstance m3 =
      SemigroupInstance::make(IntMat{{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}}, {0, 1, 2});
  CHECK(within_merge_bound(m3, 3, Rat(79, 100)));
  CHECK_FALSE(within_merge_bound(m3, 3, Rat(4, 5)));

  // k = n leaves no merge steps, so only zero passes.
  CHECK(within_merge_bound(m1, 4, Rat(0)));
  CHECK_FALSE(within_merge_bound(m1, 4, Rat(1, 1000000)));
}
