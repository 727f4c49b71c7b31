#include "instances.hpp"

#include <algorithm>
#include <random>

#include "oracle.hpp"

namespace sparseapprox {
namespace {

bool is_prime(const Int& p) {
  if (p < 2) return false;
  for (Int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int isqrt(const Int& v) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

// Uniform-ish draw from [lo, hi] driven only by the raw 64-bit stream, so the
// result does not depend on the standard library's distribution internals.
Int draw(std::mt19937_64& g, long lo, long hi) {
  unsigned long span = static_cast<unsigned long>(hi - lo);
  return Int(lo) + Int(static_cast<unsigned long>(g() % (span + 1)));
}

long entry_bound_as_long(const Int& entry_bound) {
  if (entry_bound < 1 || entry_bound > 1000000)
    fail(Errc::bad_input, "entry bound must be in [1, 10^6]");
  return entry_bound.get_si();
}

}  // namespace

SemigroupInstance InstanceSpec::to_semigroup() const {
  if (basis.empty()) fail(Errc::bad_input, "instance has no designated basis");
  return SemigroupInstance::make(matrix, basis);
}

InstanceSpec gen_example1(int m) {
  if (m < 1) fail(Errc::bad_input, "m must be positive");
  IntMat a(m, 2 * m);
  for (int i = 0; i < m; ++i) {
    a.at(i, 2 * i) = 2;
    a.at(i, 2 * i + 1) = 3;
  }
  InstanceSpec spec;
  spec.family = "example1";
  spec.params["m"] = m;
  spec.matrix = a;
  spec.predicted.push_back({"delta", -1, "eq", Rat(pow2(m)), NormTag::linf});
  spec.predicted.push_back({"app", 2 * m - 1, "eq", Rat(1), NormTag::linf});
  return spec;
}

InstanceSpec gen_example2(const std::vector<Int>& primes, int m, int k, long long budget) {
  if (m < 1) fail(Errc::bad_input, "m must be positive");
  int n = int(primes.size());
  if (n < 2) fail(Errc::bad_input, "need at least two primes");
  for (int i = 0; i < n; ++i) {
    if (!is_prime(primes[i])) fail(Errc::not_prime, "entry " + primes[i].get_str() + " is not prime");
    if (i > 0 && primes[i] <= primes[i - 1]) fail(Errc::bad_input, "primes must be strictly increasing");
  }
  int cols = m + n - 1;
  if (k < m || k > cols) fail(Errc::bad_k, "k must lie in [m, m+n-1]");

  Int product = 1;
  for (const Int& p : primes) product *= p;
  IntMat a(m, cols);
  for (int j = 0; j < n; ++j) a.at(0, j) = product / primes[j];
  for (int i = 1; i < m; ++i) a.at(i, n + i - 1) = 1;

  // Worst-case error: the k support slots first buy the m-1 unit rows, then
  // kill the largest prime factors; half the remaining product survives.
  Int value = 1;
  for (int i = 0; i < cols - k; ++i) value *= primes[i];
  value /= 2;

  InstanceSpec spec;
  spec.family = "example2";
  spec.params["m"] = m;
  spec.params["n"] = n;
  spec.params["k"] = k;
  spec.primes = primes;
  spec.matrix = a;
  IntVec target(m, 0);
  target[0] = value;
  if (m > 1) {
    Int beyond = lattice_period(a, k, budget) + 1;
    for (int i = 1; i < m; ++i) target[i] = beyond;
  }
  spec.target = target;
  spec.predicted.push_back({"app", k, "eq", Rat(value), NormTag::linf});
  return spec;
}

InstanceSpec gen_prop13(int k, int n, const Int& tail_scale) {
  if (k < 1 || k > n - 1) fail(Errc::bad_k, "need 1 <= k <= n-1");
  if (tail_scale < 1) fail(Errc::bad_input, "tail scale must be positive");
  IntMat a(1, n);
  a.at(0, 0) = pow2(k);
  for (int i = 2; i <= k + 1; ++i) a.at(0, i - 1) = pow2(k + 1) + pow2(i - 2);
  Int b = pow2(k + 1) * (k + 1) - 1;
  for (int i = k + 2; i <= n; ++i) a.at(0, i - 1) = b + 1 + Int(i) * tail_scale;

  InstanceSpec spec;
  spec.family = "prop13";
  spec.params["k"] = k;
  spec.params["n"] = n;
  spec.params["tail_scale"] = tail_scale;
  spec.matrix = a;
  spec.basis = {0};
  spec.target = IntVec{b};
  IntVec witness(n, 0);
  for (int i = 0; i <= k; ++i) witness[i] = 1;
  spec.witness = witness;
  // b needs all of a_1..a_{k+1}; with only k non-zeros the best error is
  // a_1 / 2^k = 1 in absolute value.
  spec.predicted.push_back({"app", k, "ge", Rat(1), NormTag::linf});
  return spec;
}

InstanceSpec gen_prop14(int n) {
  if (n < 3) fail(Errc::bad_input, "n must be at least 3");
  if (n == 3) {
    // The smallest case coincides with the a_1 = 2^k family at k = 2.
    InstanceSpec spec = gen_prop13(2, 3);
    spec.family = "prop14";
    spec.params.clear();
    spec.params["n"] = 3;
    spec.params["tau"] = 0;
    return spec;
  }

  // Sylvester data: t_0 = 1, t_{i+1} = t_i (t_i + 1), phi = sum 1/t_i (i >= 1).
  std::vector<Int> t(n - 1);
  t[0] = 1;
  for (int i = 1; i <= n - 2; ++i) t[i] = t[i - 1] * (t[i - 1] + 1);
  Rat phi = sylvester_phi(n - 2);
  Rat rn = Rat(1) / (2 * phi + 1);
  Rat bound = phi * rn;  // claimed error, in units of a_1

  // z_i drops exactly one factor t_j + 1; r_i = r_n / t_{n-i}.
  std::vector<Int> z(n + 1);
  std::vector<Rat> r(n + 1);
  for (int i = 2; i <= n; ++i) {
    z[i] = 1;
    for (int j = 0; j <= n - 2; ++j)
      if (j != n - i) z[i] *= t[j] + 1;
    r[i] = rn / Rat(t[n - i]);
  }

  Int tau = pow2(n);
  for (int attempt = 0; attempt < 60; ++attempt, tau *= 2) {
    std::vector<Rat> gen(n + 1);
    Rat total = 0;
    for (int i = 2; i <= n; ++i) {
      gen[i] = Rat(tau * z[i]) + r[i];
      total += gen[i];
    }

    // Coefficient caps: mu copies of a_i fit under the target only while
    // mu <= t_{n-i}, which keeps mu * r_i below r_n.
    bool ok = true;
    for (int i = 2; i <= n && ok; ++i)
      if (rat_floor(total / gen[i]) > t[n - i]) ok = false;

    // Any pair avoiding a_1 must stay strictly outside the claimed error;
    // caps extended so that combinations overshooting the target are covered.
    for (int i = 2; i <= n && ok; ++i) {
      Int ci = rat_floor((total + bound) / gen[i]);
      for (int j = i + 1; j <= n && ok; ++j) {
        Int cj = rat_floor((total + bound) / gen[j]);
        for (Int li = 0; li <= ci && ok; ++li)
          for (Int lj = 0; lj <= cj && ok; ++lj)
            if (rat_abs(total - li * gen[i] - lj * gen[j]) <= bound) ok = false;
      }
    }
    if (!ok) continue;

    Int scale = 1;
    for (int i = 2; i <= n; ++i) scale = lcm(scale, gen[i].get_den());
    IntMat a(1, n);
    a.at(0, 0) = scale;
    Int target = 0;
    for (int i = 2; i <= n; ++i) {
      Rat scaled = gen[i] * Rat(scale);
      a.at(0, i - 1) = scaled.get_num();
      target += scaled.get_num();
    }

    InstanceSpec spec;
    spec.family = "prop14";
    spec.params["n"] = n;
    spec.params["tau"] = tau;
    spec.matrix = a;
    spec.basis = {0};
    spec.target = IntVec{target};
    IntVec witness(n, 1);
    witness[0] = 0;
    spec.witness = witness;
    spec.predicted.push_back({"app", 2, "ge", bound * Rat(scale), NormTag::linf});
    return spec;
  }
  fail(Errc::tau_search_failed, "no tau satisfied the certifying inequalities");
}

InstanceSpec gen_prop15(int n, int k) {
  if (n < 3) fail(Errc::bad_input, "n must be at least 3");
  if (k < 2 || k > n - 1) fail(Errc::bad_k, "need 2 <= k <= n-1");
  Int q = isqrt(Int(n - 1));
  IntMat a(2, n);
  a.at(0, 0) = n - 1;
  a.at(1, 1) = n - 1;
  for (int i = 3; i <= n; ++i) {
    Int hi = pow2(n - 2) + 1;
    Int off = pow2(i - 2);
    a.at(0, i - 1) = Int(n - 1) * (hi + off) + 1;
    a.at(1, i - 1) = Int(n - 1) * (hi - off) + q;
  }
  IntVec target(2, 0);
  for (int j = 0; j < n; ++j) {
    target[0] += a.at(0, j);
    target[1] += a.at(1, j);
  }

  InstanceSpec spec;
  spec.family = "prop15";
  spec.params["n"] = n;
  spec.params["k"] = k;
  spec.matrix = a;
  spec.basis = {0, 1};
  spec.target = target;
  spec.witness = IntVec(n, 1);
  spec.predicted.push_back({"app", k, "ge", Rat(q) / Rat(Int(n - 1)), NormTag::pnorm_b});
  return spec;
}

InstanceSpec gen_example3(int l) {
  if (l < 3) fail(Errc::bad_l, "l must be at least 3");
  IntMat a(2, 4);
  a.at(0, 0) = 1;
  a.at(1, 1) = 1;
  a.at(0, 2) = pow2(l - 1);
  a.at(1, 2) = -pow2(l - 1);
  a.at(0, 3) = pow2(l - 1) + pow2(l - 2);
  a.at(1, 3) = -pow2(l);
  IntVec target{a.at(0, 2) + a.at(0, 3), a.at(1, 2) + a.at(1, 3)};

  InstanceSpec spec;
  spec.family = "example3";
  spec.params["l"] = l;
  spec.matrix = a;
  spec.basis = {0, 1};
  spec.target = target;
  spec.witness = IntVec{0, 0, 1, 1};
  spec.predicted.push_back({"app_basis", 3, "ge", Rat(pow2(l - 2)), NormTag::pnorm_b});
  return spec;
}

InstanceSpec gen_random_lattice(int m, int n, const Int& entry_bound, unsigned long seed) {
  if (m < 1 || n < m) fail(Errc::bad_input, "need 1 <= m <= n");
  long eb = entry_bound_as_long(entry_bound);
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    IntMat a(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) a.at(i, j) = draw(rng, -eb, eb);
    try {
      hnf(a);
    } catch (const Error& e) {
      if (e.code() != Errc::rank_deficient) throw;
      continue;
    }
    IntVec witness(n);
    for (int j = 0; j < n; ++j) witness[j] = draw(rng, -3, 3);
    InstanceSpec spec;
    spec.family = "random_lattice";
    spec.params["m"] = m;
    spec.params["n"] = n;
    spec.params["entry_bound"] = entry_bound;
    spec.params["seed"] = Int(seed);
    spec.matrix = a;
    spec.target = mat_vec(a, witness);
    spec.witness = witness;
    return spec;
  }
  fail(Errc::rank_retry_exhausted, "no full-row-rank matrix after 100 draws");
}

InstanceSpec gen_random_simplicial(int m, int n, const Int& entry_bound, unsigned long seed) {
  if (m < 1 || n < m) fail(Errc::bad_input, "need 1 <= m <= n");
  long eb = entry_bound_as_long(entry_bound);
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    IntMat b(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) b.at(i, j) = draw(rng, -eb, eb);
    if (determinant(b) == 0) continue;

    IntMat a(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) a.at(i, j) = b.at(i, j);
    for (int j = m; j < n; ++j) {
      IntVec w(m, 0);
      bool nonzero = false;
      for (int tries = 0; tries < 50 && !nonzero; ++tries) {
        for (int i = 0; i < m; ++i) {
          w[i] = draw(rng, 0, 2);
          if (w[i] != 0) nonzero = true;
        }
      }
      IntVec col = mat_vec(b, w);
      for (int i = 0; i < m; ++i) a.at(i, j) = col[i];
    }

    IntVec witness(n);
    for (int j = 0; j < n; ++j) witness[j] = draw(rng, 0, 2);
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = i;

    InstanceSpec spec;
    spec.family = "random_simplicial";
    spec.params["m"] = m;
    spec.params["n"] = n;
    spec.params["entry_bound"] = entry_bound;
    spec.params["seed"] = Int(seed);
    spec.matrix = a;
    spec.basis = basis;
    spec.target = mat_vec(a, witness);
    spec.witness = witness;
    return spec;
  }
  fail(Errc::rank_retry_exhausted, "no invertible basis after 100 draws");
}

}  // namespace sparseapprox
