#include "semigroup.hpp"

#include <algorithm>
#include <map>

namespace sparseapprox {

namespace {

Int clamp0(Int v) { return v < 0 ? Int(0) : v; }

Rat rat_pow(const Rat& x, int e) {
  Rat r(1);
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

Rat frac_part(const Rat& x) { return x - Rat(rat_floor(x)); }

// B^{-1} a_j for every column j.
std::vector<RatVec> cone_coords(const SemigroupInstance& inst) {
  IntMat bm = inst.basis_mat();
  std::vector<RatVec> c(inst.n());
  for (int j = 0; j < inst.n(); ++j) c[j] = solve_rational(bm, to_rat(inst.a.col(j)));
  return c;
}

// Exact solution of A_cols mu = v when the columns are independent and v lies
// in their span; nullopt otherwise.
std::optional<RatVec> solve_columns(const IntMat& a, const std::vector<int>& cols,
                                    const RatVec& v) {
  const int m = a.rows(), r = int(cols.size());
  std::vector<RatVec> w(m, RatVec(r + 1, Rat(0)));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < r; ++j) w[i][j] = Rat(a.at(i, cols[j]));
    w[i][r] = v[i];
  }
  std::vector<int> pivot_row(r, -1);
  int row = 0;
  for (int c = 0; c < r; ++c) {
    int piv = -1;
    for (int i = row; i < m; ++i)
      if (w[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return std::nullopt;  // dependent columns
    std::swap(w[row], w[piv]);
    for (int i = 0; i < m; ++i) {
      if (i == row || w[i][c] == 0) continue;
      Rat f = w[i][c] / w[row][c];
      for (int j = c; j <= r; ++j) w[i][j] -= f * w[row][j];
    }
    pivot_row[c] = row;
    ++row;
  }
  for (int i = row; i < m; ++i)
    if (w[i][r] != 0) return std::nullopt;  // inconsistent
  RatVec mu(r);
  for (int c = 0; c < r; ++c) mu[c] = w[pivot_row[c]][r] / w[pivot_row[c]][c];
  return mu;
}

struct ConeCombo {
  std::vector<int> cols;
  RatVec coeffs;
};

// First (by size, then lexicographically) independent subset of candidates, of
// size at most max_size, containing v in its non-negative hull.
std::optional<ConeCombo> find_cone_subset(const IntMat& a, const std::vector<int>& candidates,
                                          const RatVec& v, int max_size) {
  const int n = int(candidates.size());
  std::vector<int> pick;
  std::optional<ConeCombo> result;
  auto rec = [&](auto&& self, int start) -> bool {
    if (!pick.empty()) {
      std::vector<int> cols;
      for (int p : pick) cols.push_back(candidates[p]);
      if (auto mu = solve_columns(a, cols, v)) {
        bool nonneg = true;
        for (const auto& x : *mu)
          if (x < 0) {
            nonneg = false;
            break;
          }
        if (nonneg) {
          result = ConeCombo{cols, *mu};
          return true;
        }
      }
    }
    if (int(pick.size()) == max_size) return false;
    for (int p = start; p < n; ++p) {
      pick.push_back(p);
      if (self(self, p + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  // Depth-first growth visits subsets in lexicographic order within each size
  // prefix, which is deterministic and finds small supports first.
  rec(rec, 0);
  return result;
}

bool positively_spans(const IntMat& a) {
  const int m = a.rows();
  std::vector<int> all(a.cols());
  for (int j = 0; j < a.cols(); ++j) all[j] = j;
  for (int r = 0; r < m; ++r) {
    for (int sign : {1, -1}) {
      RatVec v(m, Rat(0));
      v[r] = sign;
      if (!find_cone_subset(a, all, v, m)) return false;
    }
  }
  return true;
}

}  // namespace

bool SemigroupInstance::is_basis_col(int j) const {
  return std::binary_search(basis.begin(), basis.end(), j);
}

SemigroupInstance SemigroupInstance::make(IntMat a, std::vector<int> basis) {
  SemigroupInstance inst;
  if (int(basis.size()) != a.rows()) fail(Errc::bad_input, "basis must list m columns");
  for (size_t i = 0; i < basis.size(); ++i) {
    if (basis[i] < 0 || basis[i] >= a.cols()) fail(Errc::bad_input, "basis index out of range");
    if (i > 0 && basis[i] <= basis[i - 1]) fail(Errc::bad_input, "basis indices must increase");
  }
  inst.a = std::move(a);
  inst.basis = std::move(basis);
  Int det = determinant(inst.basis_mat());
  if (det == 0) fail(Errc::singular, "basis columns are singular");
  inst.det_b = det < 0 ? Int(-det) : det;
  inst.simplicial = true;
  inst.mu = 0;
  for (const auto& c : cone_coords(inst)) {
    for (const auto& x : c)
      if (x < 0) inst.simplicial = false;
    Rat nrm = linf_norm(c);
    if (nrm > inst.mu) inst.mu = nrm;
  }
  return inst;
}

SparseSolution approximate_spanning(const IntMat& a, const IntVec& b, int k, long long budget) {
  const int m = a.rows(), n = a.cols();
  if (k < 2 * m) fail(Errc::bad_k, "spanning mode needs k >= 2m");
  if (int(b.size()) != m) fail(Errc::dimension_mismatch, "target length mismatch");
  if (!in_lattice(a, b)) fail(Errc::not_in_lattice, "target outside A Z^n");
  if (!positively_spans(a)) fail(Errc::not_spanning, "columns do not positively span R^m");

  const int chain_len = std::min(k - m, n);
  SparseBasisChain chain = select_sparse_basis(a, chain_len, budget);
  IntMat d = a.select_cols(chain.columns);
  HnfRoundResult rounded = hnf_round(d, to_rat(b));

  IntVec x(n, Int(0));
  for (size_t j = 0; j < chain.columns.size(); ++j) x[chain.columns[j]] += rounded.x[j];

  // A Caratheodory subcone for the negated basis sum turns pos{basis, cone}
  // into all of R^m, so each negative entry can be rewritten non-negatively.
  std::vector<int> seed(chain.columns.begin(), chain.columns.begin() + m);
  RatVec neg_basis_sum(m, Rat(0));
  for (int j : seed)
    for (int i = 0; i < m; ++i) neg_basis_sum[i] -= Rat(a.at(i, j));
  std::vector<int> all(n);
  for (int j = 0; j < n; ++j) all[j] = j;
  auto cara = find_cone_subset(a, all, neg_basis_sum, m);
  if (!cara) fail(Errc::not_spanning, "no Caratheodory subcone found");

  std::vector<int> allowed = seed;
  for (int j : cara->cols)
    if (std::find(allowed.begin(), allowed.end(), j) == allowed.end()) allowed.push_back(j);
  std::sort(allowed.begin(), allowed.end());

  for (int l = 0; l < n; ++l) {
    if (x[l] >= 0) continue;
    RatVec v(m);
    for (int i = 0; i < m; ++i) v[i] = Rat(x[l] * a.at(i, l));
    auto combo = find_cone_subset(a, allowed, v, m);
    if (!combo) fail(Errc::not_spanning, "cone lift failed");
    Int lcm(1);
    for (const auto& c : combo->coeffs) lcm = Int(lcm * c.get_den() / gcd(lcm, Int(c.get_den())));
    for (size_t j = 0; j < combo->cols.size(); ++j) {
      Rat scaled = Rat(lcm) * combo->coeffs[j];
      x[combo->cols[j]] += scaled.get_num();  // integral by choice of lcm
    }
    x[l] = (Int(1) - lcm) * x[l];
  }

  SparseSolution s;
  s.x = x;
  s.support = support_of(x);
  IntVec ax = mat_vec(a, x);
  RatVec res(m);
  for (int i = 0; i < m; ++i) res[i] = Rat(ax[i] - b[i]);
  s.error = linf_norm(res);
  s.norm = NormTag::linf;
  s.certified_bound = Rat(chain.dets.front(), pow2(unsigned(k - 2 * m + 1)));
  return s;
}

ReduceResult reduce_to_s(const SemigroupInstance& inst, IntVec lambda, long long budget) {
  const int m = inst.m(), n = inst.n();
  if (!inst.simplicial) fail(Errc::not_simplicial, "reduction needs a simplicial instance");
  if (int(lambda.size()) != n) fail(Errc::dimension_mismatch, "lambda length mismatch");
  for (int j = 0; j < n; ++j) {
    if (lambda[j] < 0) fail(Errc::bad_input, "negative coefficient");
    if (lambda[j] != 0 && inst.is_basis_col(j)) fail(Errc::bad_input, "basis coefficient in lambda");
  }
  std::vector<RatVec> c = cone_coords(inst);

  ReduceResult out;
  out.credit.assign(m, Int(0));
  while (true) {
    Int total(0);
    for (int j = 0; j < n; ++j) total += lambda[j];
    if (total <= inst.det_b) break;
    if (total > Int(long(budget)))
      throw Error(Errc::budget_exceeded, "representation too long", budget);

    std::vector<int> seq;
    for (int j = 0; j < n; ++j)
      for (Int t(0); t < lambda[j]; ++t) seq.push_back(j);

    // Two partial sums in the same class mod B Z^m differ by a block whose
    // value is a non-negative integer basis combination; at least |det B| + 1
    // sums over |det B| classes force a repeat.
    std::map<RatVec, int> seen;
    RatVec p(m, Rat(0));
    RatVec key(m, Rat(0));
    seen[key] = 0;
    int lo = -1, hi = -1;
    for (int t = 1; t <= int(seq.size()); ++t) {
      for (int i = 0; i < m; ++i) {
        p[i] += c[seq[t - 1]][i];
        key[i] = frac_part(p[i]);
      }
      auto it = seen.find(key);
      if (it != seen.end()) {
        lo = it->second;
        hi = t;
        break;
      }
      seen[key] = t;
    }
    if (lo < 0) fail(Errc::pigeonhole_violation, "no repeated class among partial sums");

    RatVec blocksum(m, Rat(0));
    for (int t = lo; t < hi; ++t) {
      lambda[seq[t]] -= 1;
      for (int i = 0; i < m; ++i) blocksum[i] += c[seq[t]][i];
    }
    for (int i = 0; i < m; ++i) {
      if (blocksum[i].get_den() != 1 || blocksum[i] < 0)
        fail(Errc::pigeonhole_violation, "block is not a non-negative basis combination");
      out.credit[i] += blocksum[i].get_num();
    }
  }
  out.lambda = std::move(lambda);
  return out;
}

MergeStep reduce_support_once(const SemigroupInstance& inst, const IntVec& lambda,
                              long long budget) {
  const int m = inst.m(), n = inst.n();
  if (!inst.simplicial) fail(Errc::not_simplicial, "merge needs a simplicial instance");
  if (int(lambda.size()) != n) fail(Errc::dimension_mismatch, "lambda length mismatch");
  std::vector<int> supp;
  for (int j = 0; j < n; ++j) {
    if (lambda[j] < 0) fail(Errc::bad_input, "negative coefficient");
    if (lambda[j] != 0) {
      if (inst.is_basis_col(j)) fail(Errc::bad_input, "basis coefficient in lambda");
      supp.push_back(j);
    }
  }
  const int s = int(supp.size());
  if (s == 0) fail(Errc::bad_input, "nothing to merge");
  if (s > 25 || (1LL << (2 * s)) > budget)
    throw Error(Errc::budget_exceeded, "too many subset pairs", 1LL << (2 * s));

  std::vector<RatVec> c = cone_coords(inst);
  const size_t count = size_t(1) << s;

  // Subset sums of the weighted generators lambda_j a_j in basis coordinates.
  std::vector<RatVec> sum(count, RatVec(m, Rat(0)));
  for (size_t mask = 1; mask < count; ++mask) {
    size_t low = mask & (~mask + 1);
    int bit = __builtin_ctzll(mask);
    sum[mask] = sum[mask ^ low];
    for (int i = 0; i < m; ++i) sum[mask][i] += Rat(lambda[supp[bit]]) * c[supp[bit]][i];
  }

  // Accept the first pair whose best shift fits the tile width:
  // increment^m * 2^s <= (mu |det B|)^(m-1).
  const Rat rhs = rat_pow(inst.mu * Rat(inst.det_b), m - 1);
  const Int two_s = pow2(unsigned(s));

  for (size_t ti = 0; ti < count; ++ti) {
    size_t i_mask = ti ^ (ti >> 1);
    for (size_t tj = 0; tj < count; ++tj) {
      size_t j_mask = tj ^ (tj >> 1);
      if ((j_mask & ~i_mask) == 0) continue;  // need a generator to drop
      IntVec shift(m);
      Rat val(0);
      for (int r = 0; r < m; ++r) {
        Rat diff = sum[i_mask][r] - sum[j_mask][r];
        shift[r] = clamp0(round_half_up(-diff));
        Rat err = rat_abs(Rat(shift[r]) + diff);
        if (err > val) val = err;
      }
      if (rat_pow(val, m) * Rat(two_s) > rhs) continue;

      MergeStep step;
      step.lambda = lambda;
      for (int bit = 0; bit < s; ++bit) {
        bool in_i = (i_mask >> bit) & 1, in_j = (j_mask >> bit) & 1;
        if (in_i && !in_j)
          step.lambda[supp[bit]] *= 2;
        else if (in_j && !in_i)
          step.lambda[supp[bit]] = 0;
      }
      step.basis_add = std::move(shift);
      step.increment = val;
      step.support_before = s;
      return step;
    }
  }
  fail(Errc::pigeonhole_violation, "no merge within tile width");
}

SemigroupSolution approximate_semigroup(const SemigroupInstance& inst, const IntVec& b, int k,
                                        const std::optional<IntVec>& witness, long long budget) {
  const int m = inst.m(), n = inst.n();
  if (!inst.simplicial) fail(Errc::not_simplicial, "approximation needs a simplicial instance");
  if (k < m || k > n) fail(Errc::bad_k, "k outside [m, n]");
  if (int(b.size()) != m) fail(Errc::dimension_mismatch, "target length mismatch");

  IntVec w;
  if (witness) {
    w = *witness;
    if (int(w.size()) != n) fail(Errc::bad_input, "witness length mismatch");
    for (const auto& v : w)
      if (v < 0) fail(Errc::bad_input, "negative witness coefficient");
    if (mat_vec(inst.a, w) != b) fail(Errc::bad_input, "witness does not represent the target");
  } else {
    auto found = find_witness(inst, b, budget);
    if (!found) fail(Errc::no_witness, "target not reached by bounded witness search");
    w = *found;
  }

  IntVec beta(m, Int(0));
  IntVec lambda = w;
  for (int pos = 0; pos < m; ++pos) {
    beta[pos] = w[inst.basis[pos]];
    lambda[inst.basis[pos]] = 0;
  }

  SemigroupSolution out;
  while (true) {
    ReduceResult rr = reduce_to_s(inst, lambda, budget);
    lambda = std::move(rr.lambda);
    for (int i = 0; i < m; ++i) beta[i] += rr.credit[i];
    int s = 0;
    for (int j = 0; j < n; ++j)
      if (lambda[j] != 0) ++s;
    if (s <= k - m) break;
    MergeStep ms = reduce_support_once(inst, lambda, budget);
    lambda = std::move(ms.lambda);
    for (int i = 0; i < m; ++i) beta[i] += ms.basis_add[i];
    out.steps.emplace_back(ms.support_before, ms.increment);
  }

  IntVec x = lambda;
  for (int pos = 0; pos < m; ++pos) x[inst.basis[pos]] = beta[pos];
  IntMat bm = inst.basis_mat();
  IntVec ax = mat_vec(inst.a, x);
  RatVec res(m);
  for (int i = 0; i < m; ++i) res[i] = Rat(ax[i] - b[i]);
  Rat err = pnorm(bm, res);

  // Plain basis rounding is a 1/2 guarantee; keep whichever is better.
  RatVec t = solve_rational(bm, to_rat(b));
  IntVec beta_fb(m);
  Rat err_fb(0);
  for (int i = 0; i < m; ++i) {
    beta_fb[i] = clamp0(round_half_up(t[i]));
    Rat d = rat_abs(Rat(beta_fb[i]) - t[i]);
    if (d > err_fb) err_fb = d;
  }
  if (err_fb < err) {
    x.assign(n, Int(0));
    for (int pos = 0; pos < m; ++pos) x[inst.basis[pos]] = beta_fb[pos];
    err = err_fb;
  }

  out.sol.x = std::move(x);
  out.sol.support = support_of(out.sol.x);
  out.sol.error = err;
  out.sol.norm = NormTag::pnorm_b;
  out.sol.certified_bound = merge_bound_upper(inst, k);
  return out;
}

SparseSolution approximate_k2(const IntVec& a, const Int& b, const std::optional<IntVec>& witness,
                              long long budget) {
  const int n = int(a.size());
  if (n < 2) fail(Errc::bad_input, "need at least two generators");
  for (int i = 0; i < n; ++i) {
    if (a[i] <= 0) fail(Errc::bad_input, "generators must be positive");
    if (i > 0 && a[i] < a[i - 1]) fail(Errc::bad_input, "generators must be sorted");
  }
  if (b < 0) fail(Errc::bad_input, "negative target");

  IntMat mat(1, n);
  for (int j = 0; j < n; ++j) mat.at(0, j) = a[j];
  SemigroupInstance inst = SemigroupInstance::make(mat, {0});
  if (witness) {
    if (int(witness->size()) != n) fail(Errc::bad_input, "witness length mismatch");
    Int dot(0);
    for (int j = 0; j < n; ++j) {
      if ((*witness)[j] < 0) fail(Errc::bad_input, "negative witness coefficient");
      dot += (*witness)[j] * a[j];
    }
    if (dot != b) fail(Errc::bad_input, "witness does not represent the target");
  } else if (!find_witness(inst, {b}, budget)) {
    fail(Errc::no_witness, "target not reached by bounded witness search");
  }

  SparseSolution best;
  best.x.assign(n, Int(0));
  best.x[0] = clamp0(round_half_up(Rat(b) / Rat(a[0])));
  best.error = rat_abs(Rat(best.x[0] * a[0] - b));

  long long iter = 0;
  for (int i = 1; i < n; ++i) {
    Int cap = b / a[i];
    for (Int mu(0); mu <= cap; ++mu) {
      if (++iter > budget) throw Error(Errc::budget_exceeded, "multiplicity sweep over budget", iter);
      Int rem = b - mu * a[i];
      Int lam = clamp0(round_half_up(Rat(rem) / Rat(a[0])));
      Rat err = rat_abs(Rat(lam * a[0] + mu * a[i] - b));
      if (err < best.error) {
        best.x.assign(n, Int(0));
        best.x[0] = lam;
        best.x[i] = mu;
        best.error = err;
      }
    }
  }
  best.support = support_of(best.x);
  best.norm = NormTag::linf;
  Rat phi = sylvester_phi(n - 2);
  best.certified_bound = phi / (2 * phi + 1) * Rat(a[0]);
  return best;
}

Rat sylvester_phi(int n) {
  if (n < 0) fail(Errc::bad_input, "negative index");
  Rat sum(0);
  Int t(1);
  for (int i = 1; i <= n; ++i) {
    t = t * (t + 1);
    sum += Rat(1) / Rat(t);
  }
  return sum;
}

int exact_threshold(const SemigroupInstance& inst) {
  const int m = inst.m();
  Rat rhs = rat_pow(inst.mu, m - 1) * rat_pow(Rat(inst.det_b), 2 * m - 1);
  int n = m;
  Int p2(1);
  while (Rat(p2) <= rhs) {
    ++n;
    p2 *= 2;
  }
  return n;
}

std::optional<IntVec> find_witness(const SemigroupInstance& inst, const IntVec& b,
                                   long long budget) {
  const int m = inst.m(), n = inst.n();
  if (!inst.simplicial) fail(Errc::not_simplicial, "witness search needs a simplicial instance");
  if (int(b.size()) != m) fail(Errc::dimension_mismatch, "target length mismatch");
  std::vector<RatVec> c = cone_coords(inst);
  RatVec t = solve_rational(inst.basis_mat(), to_rat(b));
  for (const auto& v : t)
    if (v < 0) return std::nullopt;

  std::vector<int> nb;
  for (int j = 0; j < n; ++j) {
    if (inst.is_basis_col(j)) continue;
    bool zero = true;
    for (int i = 0; i < m; ++i)
      if (c[j][i] != 0) zero = false;
    if (!zero) nb.push_back(j);
  }

  IntVec x(n, Int(0));
  long long nodes = 0;
  auto dfs = [&](auto&& self, size_t idx, RatVec rem) -> bool {
    if (++nodes > budget) throw Error(Errc::budget_exceeded, "witness search over budget", nodes);
    if (idx == nb.size()) {
      for (int i = 0; i < m; ++i)
        if (rem[i].get_den() != 1) return false;
      for (int i = 0; i < m; ++i) x[inst.basis[i]] = rem[i].get_num();
      return true;
    }
    int j = nb[idx];
    Int cap(-1);
    for (int i = 0; i < m; ++i) {
      if (c[j][i] <= 0) continue;
      Int ci = rat_floor(rem[i] / c[j][i]);
      if (cap < 0 || ci < cap) cap = ci;
    }
    for (Int v(0); v <= cap; ++v) {
      x[j] = v;
      RatVec next = rem;
      if (v != 0)
        for (int i = 0; i < m; ++i) next[i] -= Rat(v) * c[j][i];
      bool ok = true;
      for (int i = 0; i < m; ++i)
        if (next[i] < 0) ok = false;
      if (ok && self(self, idx + 1, std::move(next))) return true;
    }
    x[j] = 0;
    return false;
  };
  if (dfs(dfs, 0, t)) return x;
  return std::nullopt;
}

namespace {

// floor((p/q)^(1/m) * 2^bits) / 2^bits and the matching upper value.
std::pair<Rat, Rat> root_enclosure(const Rat& r, int m, int bits) {
  Int p = r.get_num(), q = r.get_den();
  Int n = p;
  for (int i = 0; i < m - 1; ++i) n *= q;
  Int scale = pow2(unsigned(m * bits));
  Int target = n * scale;
  Int root;
  int exact = mpz_root(root.get_mpz_t(), target.get_mpz_t(), unsigned(m));
  Rat den = Rat(q) * Rat(pow2(unsigned(bits)));
  Rat lo = Rat(root) / den;
  Rat hi = exact ? lo : Rat(root + 1) / den;
  return {lo, hi};
}

}  // namespace

bool within_merge_bound(const SemigroupInstance& inst, int k, const Rat& error) {
  const int m = inst.m(), n = inst.n();
  if (k < m || k > n) fail(Errc::bad_k, "k outside [m, n]");
  if (m == 1) {
    Rat bound(0);
    for (int s = k; s <= n - 1; ++s) bound += Rat(1, pow2(unsigned(s)));
    return error <= bound;
  }
  if (m == 2) {
    // bound = p sqrt(w) + q sqrt(2w): split the geometric sum by parity.
    Rat w = inst.mu * Rat(inst.det_b);
    Rat p(0), q(0);
    for (int s = k - 1; s <= n - 2; ++s) {
      if (s % 2 == 0)
        p += Rat(1, pow2(unsigned(s / 2)));
      else
        q += Rat(1, pow2(unsigned((s + 1) / 2)));
    }
    Rat lhs = error * error - p * p * w - q * q * (2 * w);
    if (lhs <= 0) return true;
    return lhs * lhs <= 4 * p * p * q * q * w * (2 * w);
  }
  // Certified enclosure; ties inside the gap count as violations.
  Rat lo(0), hi(0);
  Rat base = rat_pow(inst.mu * Rat(inst.det_b), m - 1);
  for (int s = k - m + 1; s <= n - m; ++s) {
    auto [l, h] = root_enclosure(base / Rat(pow2(unsigned(s))), m, 256);
    lo += l;
    hi += h;
  }
  return error <= lo;
}

Rat merge_bound_upper(const SemigroupInstance& inst, int k, int bits) {
  const int m = inst.m(), n = inst.n();
  Rat base = rat_pow(inst.mu * Rat(inst.det_b), m - 1);
  Rat sum(0);
  for (int s = k - m + 1; s <= n - m; ++s)
    sum += root_enclosure(base / Rat(pow2(unsigned(s))), m, bits).second;
  return sum;
}

}  // namespace sparseapprox
