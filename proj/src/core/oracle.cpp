#include "oracle.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <set>

namespace sparseapprox {

namespace {

// Visit all size-k subsets of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  if (k > n || k < 0) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

void bump(long long& nodes, long long budget, const char* what) {
  if (++nodes > budget) throw Error(Errc::budget_exceeded, what, nodes);
}

long long to_count(const Int& v) {
  return v.fits_slong_p() ? static_cast<long long>(v.get_si()) : LLONG_MAX;
}

// Minimum ||H z - t||_inf over integer z, for lower-triangular H with positive
// diagonal. Seeded by the forward-rounding radius; among equally good points
// the first in ascending coordinate order wins.
std::pair<IntVec, Rat> tri_closest(const IntMat& h, const RatVec& t, long long& nodes,
                                   long long budget) {
  const int m = h.rows();
  IntVec best_z(m);
  Rat best(0);
  {
    RatVec rem = t;
    for (int r = 0; r < m; ++r) {
      best_z[r] = round_half_up(rem[r] / Rat(h.at(r, r)));
      for (int i = r; i < m; ++i) rem[i] -= Rat(best_z[r] * h.at(i, r));
      Rat res = rat_abs(rem[r]);
      if (res > best) best = res;
    }
  }
  IntVec z(m);
  auto rec = [&](auto&& self, int r, const RatVec& rem, const Rat& cur) -> void {
    bump(nodes, budget, "closest-vector search over budget");
    if (r == m) {
      if (cur < best) {
        best = cur;
        best_z = z;
      }
      return;
    }
    Rat hr(h.at(r, r));
    Int lo = rat_ceil((rem[r] - best) / hr);
    Int hi = rat_floor((rem[r] + best) / hr);
    for (Int v = lo; v <= hi; ++v) {
      Rat res = rat_abs(rem[r] - Rat(v) * hr);
      if (res > best) continue;
      z[r] = v;
      RatVec next = rem;
      for (int i = r; i < m; ++i) next[i] -= Rat(v * h.at(i, r));
      self(self, r + 1, next, cur > res ? cur : res);
    }
  };
  rec(rec, 0, t, Rat(0));
  return {best_z, best};
}

// Reduce v modulo the columns of a triangular lattice basis so that the r-th
// entry lands in [0, H_rr); distances to the lattice depend only on this form.
IntVec canonical_residue(const IntMat& h, IntVec v) {
  const int m = h.rows();
  for (int r = 0; r < m; ++r) {
    Int q = floor_div(v[r], h.at(r, r));
    if (q == 0) continue;
    for (int i = r; i < m; ++i) v[i] -= q * h.at(i, r);
  }
  return v;
}

struct SupportCtx {
  std::vector<int> cols;
  IntMat h;
  Int det;
  std::map<IntVec, Rat> memo;
};

std::vector<SupportCtx> lattice_supports(const IntMat& a, int k) {
  const int m = a.rows(), n = a.cols();
  if (k < m || k > n) fail(Errc::bad_k, "k outside [m, n]");
  std::vector<SupportCtx> out;
  for_each_subset(n, k, [&](const std::vector<int>& cols) {
    try {
      HnfResult hf = hnf(a.select_cols(cols));
      out.push_back(SupportCtx{cols, std::move(hf.h), std::move(hf.det_lambda), {}});
    } catch (const Error& e) {
      if (e.code() != Errc::rank_deficient) throw;
    }
  });
  if (out.empty()) fail(Errc::rank_deficient, "no full-row-rank support of size k");
  return out;
}

Rat support_dist(SupportCtx& ctx, const IntVec& b, long long& nodes, long long budget) {
  IntVec res = canonical_residue(ctx.h, b);
  auto it = ctx.memo.find(res);
  if (it != ctx.memo.end()) return it->second;
  Rat dist = tri_closest(ctx.h, to_rat(res), nodes, budget).second;
  ctx.memo.emplace(std::move(res), dist);
  return dist;
}

Int support_period(const std::vector<SupportCtx>& supports) {
  Int period(1);
  for (const auto& s : supports) period = Int(period * s.det / gcd(period, s.det));
  return period;
}

Int clamp0(Int v) { return v < 0 ? Int(0) : v; }

std::vector<RatVec> basis_coords(const SemigroupInstance& inst) {
  IntMat bm = inst.basis_mat();
  std::vector<RatVec> c(inst.n());
  for (int j = 0; j < inst.n(); ++j) c[j] = solve_rational(bm, to_rat(inst.a.col(j)));
  return c;
}

// Upper bounds on non-basis coefficients valid for every solution whose error
// stays within e0. Basis coefficients only push row sums up, so each row with
// all of its negative contributors already bounded caps its positive entries.
std::vector<Int> derive_caps(const SemigroupInstance& inst, const std::vector<RatVec>& c,
                             const RatVec& t, const Rat& e0) {
  const int m = inst.m(), n = inst.n();
  std::vector<Int> cap(n, Int(0));
  std::vector<char> capped(n, 0);
  std::vector<int> nb;
  for (int j = 0; j < n; ++j) {
    if (inst.is_basis_col(j)) {
      capped[j] = 1;
      continue;
    }
    bool zero = true;
    for (int r = 0; r < m; ++r)
      if (c[j][r] != 0) zero = false;
    if (zero)
      capped[j] = 1;
    else
      nb.push_back(j);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int j : nb) {
      if (capped[j]) continue;
      bool have = false;
      Int best(0);
      for (int r = 0; r < m; ++r) {
        if (c[j][r] <= 0) continue;
        Rat slack = t[r] + e0;
        bool usable = true;
        for (int o : nb) {
          if (o == j || c[o][r] >= 0) continue;
          if (!capped[o]) {
            usable = false;
            break;
          }
          slack += Rat(cap[o]) * (-c[o][r]);
        }
        if (!usable) continue;
        Int cj = clamp0(rat_floor(slack / c[j][r]));
        if (!have || cj < best) best = cj;
        have = true;
      }
      if (have) {
        cap[j] = best;
        capped[j] = 1;
        changed = true;
      }
    }
  }
  for (int j : nb)
    if (!capped[j]) fail(Errc::bad_input, "generator coefficients cannot be bounded");
  return cap;
}

struct SgDist {
  Rat value = Rat(-1);
  std::vector<int> support;
};

SgDist sg_dist_full(const SemigroupInstance& inst, const IntVec& b, int k, bool basis_fixed,
                    EnumStats& stats, long long budget) {
  const int m = inst.m(), n = inst.n();
  if (int(b.size()) != m) fail(Errc::dimension_mismatch, "target length mismatch");
  if (k < m || k > n) fail(Errc::bad_k, "k outside [m, n]");
  std::vector<RatVec> c = basis_coords(inst);
  RatVec t = solve_rational(inst.basis_mat(), to_rat(b));
  Rat e0(0);
  for (int r = 0; r < m; ++r) {
    Rat d = rat_abs(Rat(clamp0(round_half_up(t[r]))) - t[r]);
    if (d > e0) e0 = d;
  }
  std::vector<Int> cap = derive_caps(inst, c, t, e0);

  std::vector<int> universe;
  for (int j = 0; j < n; ++j)
    if (!basis_fixed || !inst.is_basis_col(j)) universe.push_back(j);
  const int size = std::min(basis_fixed ? k - m : k, int(universe.size()));

  SgDist best;
  for_each_subset(int(universe.size()), size, [&](const std::vector<int>& idx) {
    if (best.value == 0) return;
    ++stats.supports;
    std::vector<int> cols;
    for (int p : idx) cols.push_back(universe[p]);
    std::vector<char> rowfree(m, basis_fixed ? 1 : 0);
    std::vector<int> nbcols;
    for (int j : cols) {
      if (inst.is_basis_col(j)) {
        auto pos = std::lower_bound(inst.basis.begin(), inst.basis.end(), j);
        rowfree[int(pos - inst.basis.begin())] = 1;
      } else {
        nbcols.push_back(j);
      }
    }
    auto rec = [&](auto&& self, size_t i, const RatVec& acc) -> void {
      bump(stats.nodes, budget, "coefficient enumeration over budget");
      if (i == nbcols.size()) {
        Rat err(0);
        for (int r = 0; r < m; ++r) {
          Rat g = acc[r];
          if (rowfree[r]) g += Rat(clamp0(round_half_up(-acc[r])));
          Rat d = rat_abs(g);
          if (d > err) err = d;
        }
        if (best.value < 0 || err < best.value) {
          best.value = err;
          best.support = cols;
        }
        return;
      }
      int j = nbcols[i];
      for (Int v(0); v <= cap[j]; ++v) {
        RatVec next = acc;
        if (v != 0)
          for (int r = 0; r < m; ++r) next[r] += Rat(v) * c[j][r];
        self(self, i + 1, next);
      }
    };
    RatVec start(m);
    for (int r = 0; r < m; ++r) start[r] = -t[r];
    rec(rec, 0, start);
  });
  return best;
}

}  // namespace

CvpResult cvp_linf(const IntMat& d, const RatVec& target, long long budget) {
  if (int(target.size()) != d.rows()) fail(Errc::dimension_mismatch, "target length mismatch");
  HnfResult hf = hnf(d);
  long long nodes = 0;
  auto [z, dist] = tri_closest(hf.h, target, nodes, budget);
  IntVec ext(d.cols(), Int(0));
  for (int i = 0; i < d.rows(); ++i) ext[i] = z[i];
  CvpResult out;
  out.x = mat_vec(hf.u, ext);
  out.dist = dist;
  return out;
}

OracleReport lattice_app(const IntMat& a, int k, long long budget) {
  const int m = a.rows();
  std::vector<SupportCtx> supports = lattice_supports(a, k);
  HnfResult full = hnf(a);
  Int period = support_period(supports);
  Int cosets(1);
  for (int r = 0; r < m; ++r) cosets *= period / full.h.at(r, r);
  if (cosets > Int(long(budget)))
    throw Error(Errc::budget_exceeded, "coset sweep over budget", to_count(cosets));

  OracleReport rep;
  rep.value = Rat(-1);
  rep.stats.supports = static_cast<long long>(supports.size());
  long long nodes = 0;
  IntVec z(m), b(m);
  auto sweep = [&](auto&& self, int r) -> void {
    if (r == m) {
      ++rep.stats.cosets;
      Rat fmin(-1);
      for (auto& s : supports) {
        Rat d = support_dist(s, b, nodes, budget);
        if (fmin < 0 || d < fmin) fmin = d;
        if (fmin == 0) break;
      }
      if (fmin > rep.value) {
        rep.value = fmin;
        rep.witness_b = b;
      }
      return;
    }
    Int off(0);
    for (int j = 0; j < r; ++j) off += full.h.at(r, j) * z[j];
    Int hrr = full.h.at(r, r);
    Int lo = floor_div(-off + hrr - 1, hrr);
    Int hi = floor_div(period - 1 - off, hrr);
    for (Int v = lo; v <= hi; ++v) {
      z[r] = v;
      b[r] = off + hrr * v;
      self(self, r + 1);
    }
  };
  sweep(sweep, 0);
  for (auto& s : supports) {
    if (support_dist(s, rep.witness_b, nodes, budget) == rep.value) {
      rep.witness_support = s.cols;
      break;
    }
  }
  rep.stats.nodes = nodes;
  return rep;
}

Rat lattice_dist(const IntMat& a, const IntVec& b, int k, long long budget) {
  if (int(b.size()) != a.rows()) fail(Errc::dimension_mismatch, "target length mismatch");
  std::vector<SupportCtx> supports = lattice_supports(a, k);
  long long nodes = 0;
  Rat fmin(-1);
  for (auto& s : supports) {
    Rat d = support_dist(s, b, nodes, budget);
    if (fmin < 0 || d < fmin) fmin = d;
    if (fmin == 0) break;
  }
  return fmin;
}

Int lattice_period(const IntMat& a, int k, long long budget) {
  (void)budget;
  return support_period(lattice_supports(a, k));
}

OracleReport semigroup_app(const SemigroupInstance& inst, int k, bool basis_fixed,
                           long long budget) {
  const int m = inst.m(), n = inst.n();
  if (!inst.simplicial) fail(Errc::not_simplicial, "target sweep needs a simplicial instance");
  if (k < m || k > n) fail(Errc::bad_k, "k outside [m, n]");
  if (!inst.det_b.fits_ulong_p())
    throw Error(Errc::budget_exceeded, "target sweep over budget", LLONG_MAX);

  // With the basis fixed, stripping basis multiples never raises the
  // distance, so non-basis coefficient sums up to |det B| cover the worst
  // case. Under plain k-sparsity basis multiples consume support slots, so
  // they stay in the sweep, bounded by the same sum.
  std::vector<int> nb;
  for (int j = 0; j < n; ++j)
    if (!basis_fixed || !inst.is_basis_col(j)) nb.push_back(j);

  Int scount;
  mpz_bin_uiui(scount.get_mpz_t(), unsigned(nb.size()) + inst.det_b.get_ui(),
               unsigned(nb.size()));
  if (scount > Int(long(budget)))
    throw Error(Errc::budget_exceeded, "target sweep over budget", to_count(scount));

  std::set<IntVec> targets;
  IntVec b(m, Int(0));
  auto gen = [&](auto&& self, size_t i, const Int& left) -> void {
    if (i == nb.size()) {
      targets.insert(b);
      return;
    }
    int j = nb[i];
    for (Int v(0); v <= left; ++v) {
      if (v != 0)
        for (int r = 0; r < m; ++r) b[r] += inst.a.at(r, j);
      self(self, i + 1, Int(left - v));
    }
    for (int r = 0; r < m; ++r) b[r] -= left * inst.a.at(r, j);
  };
  gen(gen, 0, inst.det_b);

  OracleReport rep;
  rep.value = Rat(-1);
  for (const IntVec& target : targets) {
    ++rep.stats.cosets;
    SgDist d = sg_dist_full(inst, target, k, basis_fixed, rep.stats, budget);
    if (d.value > rep.value) {
      rep.value = d.value;
      rep.witness_b = target;
      rep.witness_support = d.support;
    }
  }
  return rep;
}

Rat semigroup_dist(const SemigroupInstance& inst, const IntVec& b, int k, bool basis_fixed,
                   long long budget) {
  EnumStats stats;
  return sg_dist_full(inst, b, k, basis_fixed, stats, budget).value;
}

long long max_antichain(int m, int s, long long budget) {
  if (m < 1 || s < 0) fail(Errc::bad_input, "need m >= 1 and s >= 0");
  long long count = 1;
  for (int i = 0; i < m; ++i) {
    count *= s + 1;
    if (count > budget) throw Error(Errc::budget_exceeded, "grid over budget", count);
  }
  const int n = int(count);
  std::vector<std::vector<int>> pt(n, std::vector<int>(m));
  for (int v = 0; v < n; ++v) {
    int x = v;
    for (int i = 0; i < m; ++i) {
      pt[v][i] = x % (s + 1);
      x /= s + 1;
    }
  }
  std::vector<std::vector<int>> adj(n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      bool below = true;
      for (int i = 0; i < m && below; ++i)
        if (pt[u][i] > pt[v][i]) below = false;
      if (below) adj[u].push_back(v);
    }
  }
  // Minimum chain cover: grid size minus a maximum matching between chain
  // predecessors and successors.
  std::vector<int> match(n, -1);
  std::vector<char> used(n, 0);
  auto augment = [&](auto&& self, int u) -> bool {
    for (int v : adj[u]) {
      if (used[v]) continue;
      used[v] = 1;
      if (match[v] < 0 || self(self, match[v])) {
        match[v] = u;
        return true;
      }
    }
    return false;
  };
  long long matched = 0;
  for (int u = 0; u < n; ++u) {
    used.assign(n, 0);
    if (augment(augment, u)) ++matched;
  }
  return count - matched;
}

bool verify_unique_representation(const IntVec& a, const Int& b, const Int& max_coeff_sum,
                                  long long budget) {
  const int n = int(a.size());
  for (const auto& v : a)
    if (v <= 0) fail(Errc::bad_input, "generators must be positive");
  if (b < 0) fail(Errc::bad_input, "negative target");
  long long nodes = 0;
  int found = 0;
  IntVec lam(n, Int(0)), first;
  auto rec = [&](auto&& self, int i, const Int& rem, const Int& used) -> void {
    if (found >= 2) return;
    bump(nodes, budget, "representation enumeration over budget");
    if (i == n) {
      if (rem == 0) {
        if (++found == 1) first = lam;
      }
      return;
    }
    Int cap = rem / a[i];
    if (Int(max_coeff_sum - used) < cap) cap = max_coeff_sum - used;
    for (Int v(0); v <= cap; ++v) {
      lam[i] = v;
      self(self, i + 1, Int(rem - v * a[i]), Int(used + v));
    }
    lam[i] = 0;
  };
  rec(rec, 0, b, Int(0));
  if (found != 1) return false;
  for (const auto& v : first)
    if (v != 1) return false;
  return true;
}

}  // namespace sparseapprox
