#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "core/oracle.hpp"

using namespace sparseapprox;

namespace {

Int draw(std::mt19937_64& gen, long lo, long hi) {
  unsigned long span = static_cast<unsigned long>(hi - lo + 1);
  return Int(lo + long(gen() % span));
}

IntMat random_matrix(std::mt19937_64& gen, int rows, int cols, long bound) {
  IntMat a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a.at(i, j) = draw(gen, -bound, bound);
  return a;
}

// Columns 2 e_i, 3 e_i for each coordinate.
IntMat example1(int m) {
  IntMat a(m, 2 * m);
  for (int i = 0; i < m; ++i) {
    a.at(i, 2 * i) = 2;
    a.at(i, 2 * i + 1) = 3;
  }
  return a;
}

// One row: products of all primes but one.
IntMat prime_products(const std::vector<long>& primes) {
  IntMat a(1, int(primes.size()));
  for (size_t i = 0; i < primes.size(); ++i) {
    Int q(1);
    for (size_t j = 0; j < primes.size(); ++j)
      if (j != i) q *= primes[j];
    a.at(0, int(i)) = q;
  }
  return a;
}

}  // namespace

TEST_CASE("cvp_linf fixed values") {
  CvpResult r = cvp_linf(IntMat{{6}}, RatVec{Rat(3)});
  CHECK(r.dist == Rat(3));

  CvpResult hit = cvp_linf(IntMat{{6}}, RatVec{Rat(-18)});
  CHECK(hit.dist == Rat(0));
  CHECK(hit.x == IntVec{-3});

  // Odd first coordinate keeps the distance at 1; exhaustive over a box
  // confirms nothing beats it.
  CvpResult two = cvp_linf(IntMat{{2, 0}, {1, 3}}, RatVec{Rat(1), Rat(1)});
  CHECK(two.dist == Rat(1));
  IntMat d{{2, 0}, {1, 3}};
  Rat best(-1);
  for (long x1 = -6; x1 <= 6; ++x1)
    for (long x2 = -6; x2 <= 6; ++x2) {
      Rat e1 = rat_abs(Rat(2 * x1 - 1));
      Rat e2 = rat_abs(Rat(x1 + 3 * x2 - 1));
      Rat e = e1 > e2 ? e1 : e2;
      if (best < 0 || e < best) best = e;
    }
  CHECK(two.dist == best);
}

TEST_CASE("cvp_linf never beats nor trails hnf_round incorrectly") {
  std::mt19937_64 gen(47);
  int done = 0;
  while (done < 40) {
    int m = 1 + int(draw(gen, 0, 2).get_si());
    int l = m + int(draw(gen, 0, 2).get_si());
    IntMat d = random_matrix(gen, m, l, 6);
    HnfRoundResult hr;
    try {
      hr = hnf_round(d, RatVec(m, Rat(0)));
    } catch (const Error&) {
      continue;
    }
    RatVec target(m);
    for (int i = 0; i < m; ++i) target[i] = Rat(draw(gen, -30, 30)) / Rat(draw(gen, 1, 4));
    hr = hnf_round(d, target);
    CvpResult cv = cvp_linf(d, target);
    CHECK(cv.dist <= hr.error);

    // The reported coefficient vector attains the reported distance.
    RatVec dx = mat_vec(d, to_rat(cv.x));
    Rat got(0);
    for (int i = 0; i < m; ++i) {
      Rat c = rat_abs(dx[i] - target[i]);
      if (c > got) got = c;
    }
    CHECK(got == cv.dist);
    ++done;
  }
}

TEST_CASE("lattice_app on the 2e/3e instance") {
  OracleReport rep = lattice_app(example1(2), 3);
  CHECK(rep.value == Rat(1));
  CHECK(lattice_dist(example1(2), rep.witness_b, 3) == rep.value);
  CHECK(rep.stats.cosets > 0);
  CHECK(rep.stats.supports > 0);
}

TEST_CASE("lattice_app on prime products") {
  IntMat a = prime_products({2, 3, 5});  // columns 15, 10, 6
  OracleReport k1 = lattice_app(a, 1);
  CHECK(k1.value == Rat(3));
  OracleReport k2 = lattice_app(a, 2);
  CHECK(k2.value == Rat(1));
  OracleReport k3 = lattice_app(a, 3);
  CHECK(k3.value == Rat(0));
}

TEST_CASE("lattice_app with an identity submatrix and k = n is exact") {
  IntMat a{{1, 0, 5}, {0, 1, 7}};
  CHECK(lattice_app(a, 3).value == Rat(0));
}

TEST_CASE("lattice_app validation and budget") {
  try {
    lattice_app(example1(2), 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::bad_k);
  }
  try {
    lattice_app(prime_products({2, 3, 5}), 1, 4);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::budget_exceeded);
    CHECK(e.count().has_value());
  }
}

TEST_CASE("per-target objective is periodic modulo the support lcm") {
  IntMat a{{2, 0, 3}, {0, 2, 3}};
  Int period = lattice_period(a, 2);
  CHECK(period == 12);

  std::mt19937_64 gen(53);
  for (int t = 0; t < 8; ++t) {
    IntVec w(3);
    for (int j = 0; j < 3; ++j) w[j] = draw(gen, -3, 3);
    IntVec b = mat_vec(a, w);
    Rat base = lattice_dist(a, b, 2);
    for (int i = 0; i < 2; ++i) {
      IntVec shifted = b;
      shifted[i] += period;
      CHECK(lattice_dist(a, shifted, 2) == base);
    }
  }
}

TEST_CASE("semigroup_app on a power-of-two knapsack") {
  // a_1 = 4 with generators 9, 10 and a tail column above the hard target.
  SemigroupInstance inst = SemigroupInstance::make(IntMat{{4, 9, 10, 28}}, {0});

  // Plain 2-sparsity: the worst target is 23 = 4 + 9 + 10, off by 1 = a_1/4.
  OracleReport plain = semigroup_app(inst, 2, false);
  CHECK(plain.value == Rat(1, 4));
  CHECK(plain.witness_b == IntVec{23});

  // Fixed basis: the worst target drops the basis part, 19 = 9 + 10.
  OracleReport fixed = semigroup_app(inst, 2, true);
  CHECK(fixed.value == Rat(1, 4));
  CHECK(fixed.witness_b == IntVec{19});
  CHECK(plain.value <= fixed.value);

  // Basis rounding alone: worst target 18 sits mid-tile.
  CHECK(semigroup_app(inst, 1, true).value == Rat(1, 2));

  // k = n represents every target exactly.
  CHECK(semigroup_app(inst, 4, false).value == Rat(0));
}

TEST_CASE("semigroup_app on the straddling two-row family") {
  IntMat a{{4, 0, 45, 53, 69}, {0, 4, 30, 22, 6}};
  SemigroupInstance inst = SemigroupInstance::make(a, {0, 1});
  REQUIRE(inst.simplicial);
  OracleReport rep = semigroup_app(inst, 2, false, 100000000);
  CHECK(rep.value == Rat(1, 2));
}

TEST_CASE("semigroup_app validation") {
  SemigroupInstance bad =
      SemigroupInstance::make(IntMat{{1, 0, -1}, {0, 1, 2}}, {0, 1});
  try {
    semigroup_app(bad, 2, true);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_simplicial);
  }
  SemigroupInstance m1 = SemigroupInstance::make(IntMat{{4, 9, 10, 28}}, {0});
  try {
    semigroup_app(m1, 2, false, 3);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::budget_exceeded);
  }
}

TEST_CASE("semigroup_dist at explicit targets") {
  SemigroupInstance inst = SemigroupInstance::make(IntMat{{4, 9, 10, 28}}, {0});
  CHECK(semigroup_dist(inst, IntVec{23}, 2, false) == Rat(1, 4));
  CHECK(semigroup_dist(inst, IntVec{23}, 3, false) == Rat(0));
  CHECK(semigroup_dist(inst, IntVec{19}, 2, false) == Rat(0));
  CHECK(semigroup_dist(inst, IntVec{19}, 2, true) == Rat(1, 4));

  // The bad-basis instance: both extra columns are needed to reach their sum.
  IntMat e3{{1, 0, 4, 6}, {0, 1, -4, -8}};
  SemigroupInstance bad = SemigroupInstance::make(e3, {0, 1});
  CHECK_FALSE(bad.simplicial);
  CHECK(semigroup_dist(bad, IntVec{10, -12}, 3, true) == Rat(2));
  CHECK(semigroup_dist(bad, IntVec{10, -12}, 4, true) == Rat(0));
}

TEST_CASE("max_antichain on grid posets") {
  for (int s = 0; s <= 5; ++s) CHECK(max_antichain(1, s) == 1);
  CHECK(max_antichain(2, 3) == 4);
  CHECK(max_antichain(2, 5) == 6);
  CHECK(max_antichain(3, 2) == 7);
  CHECK(max_antichain(3, 3) == 12);
  try {
    max_antichain(3, 100, 1000);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::budget_exceeded);
  }
}

TEST_CASE("unique representation checks") {
  CHECK(verify_unique_representation(IntVec{4, 9, 10}, Int(23), Int(3)));
  CHECK_FALSE(verify_unique_representation(IntVec{2, 3}, Int(6), Int(3)));
  CHECK(verify_unique_representation(IntVec{7}, Int(7), Int(2)));

  // A unique representation that is not all-ones does not qualify.
  CHECK_FALSE(verify_unique_representation(IntVec{4, 9, 10}, Int(4), Int(3)));
}
