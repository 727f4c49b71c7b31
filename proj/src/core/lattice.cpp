#include "lattice.hpp"

#include <algorithm>

namespace sparseapprox {

namespace {

// Visit all size-m subsets of [0, n) in lexicographic order.
template <typename F>
void for_each_subset(int n, int m, long long budget, F&& f) {
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  long long seen = 0;
  while (true) {
    if (++seen > budget)
      throw Error(Errc::budget_exceeded, "subset enumeration over budget", seen);
    f(idx);
    int i = m - 1;
    while (i >= 0 && idx[i] == n - m + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

DeltaResult delta(const IntMat& a, long long budget) {
  const int m = a.rows(), n = a.cols();
  if (n < m) fail(Errc::rank_deficient, "fewer columns than rows");
  DeltaResult best;
  best.value = 0;
  for_each_subset(n, m, budget, [&](const std::vector<int>& idx) {
    Int det = determinant(a.select_cols(idx));
    if (det < 0) det = -det;
    if (det == 0) return;
    if (best.value == 0 || det < best.value) {
      best.value = det;
      best.cols = idx;
    }
  });
  if (best.value == 0) fail(Errc::rank_deficient, "no invertible column submatrix");
  return best;
}

HnfRoundResult hnf_round(const IntMat& d, const RatVec& target) {
  const int m = d.rows(), l = d.cols();
  if (int(target.size()) != m) fail(Errc::dimension_mismatch, "target length mismatch");
  HnfResult hr = hnf(d);
  IntVec z(m);
  for (int i = 0; i < m; ++i) {
    Rat rem = target[i];
    for (int j = 0; j < i; ++j) rem -= Rat(hr.h.at(i, j) * z[j]);
    z[i] = round_half_up(rem / Rat(hr.h.at(i, i)));
  }
  IntVec zfull(l);
  for (int i = 0; i < m; ++i) zfull[i] = z[i];
  HnfRoundResult res;
  res.x = mat_vec(hr.u, zfull);
  res.residual.resize(m);
  IntVec dx = mat_vec(d, res.x);
  for (int i = 0; i < m; ++i) res.residual[i] = Rat(dx[i]) - target[i];
  res.error = linf_norm(res.residual);
  return res;
}

SparseBasisChain select_sparse_basis(const IntMat& a, int k, long long budget) {
  const int m = a.rows(), n = a.cols();
  if (k < m) fail(Errc::bad_k, "k below row count");
  const int len = std::min(k, n);

  DeltaResult base = delta(a, budget);
  const Int full_det = hnf(a).det_lambda;
  SparseBasisChain chain;
  chain.columns = base.cols;
  chain.dets.push_back(base.value);

  std::vector<bool> used(n, false);
  for (int c : chain.columns) used[c] = true;

  while (int(chain.columns.size()) < len) {
    int best_col = -1;
    Int best_det;
    for (int c = 0; c < n; ++c) {
      if (used[c]) continue;
      if (in_lattice(a.select_cols(chain.columns), a.col(c))) continue;
      std::vector<int> cand = chain.columns;
      cand.push_back(c);
      Int det = hnf(a.select_cols(cand)).det_lambda;
      if (best_col < 0 || det < best_det) {
        best_col = c;
        best_det = det;
      }
    }
    if (best_col < 0) {
      // Every remaining column already lies in the chain lattice, which thus
      // equals A Z^n; pad with the lowest-index unused columns.
      for (int c = 0; c < n && int(chain.columns.size()) < len; ++c) {
        if (used[c]) continue;
        used[c] = true;
        chain.columns.push_back(c);
        chain.dets.push_back(chain.dets.back());
      }
      break;
    }
    used[best_col] = true;
    chain.columns.push_back(best_col);
    chain.dets.push_back(best_det);
  }
  chain.exact = chain.dets.back() == full_det;
  chain.certified_bound = Rat(chain.dets.back()) / Rat(2);
  return chain;
}

SparseSolution approximate_lattice(const IntMat& a, const IntVec& b, int k, long long budget) {
  const int m = a.rows(), n = a.cols();
  if (k < m || k > n) fail(Errc::bad_k, "k outside [m, n]");
  if (int(b.size()) != m) fail(Errc::dimension_mismatch, "target length mismatch");
  if (!in_lattice(a, b)) fail(Errc::not_in_lattice, "target outside A Z^n");

  SparseBasisChain chain = select_sparse_basis(a, k, budget);
  RatVec target = to_rat(b);

  // Rounding on any chain prefix stays within the k-support budget; taking the
  // best prefix makes the error non-increasing in k at no extra cost.
  SparseSolution best;
  bool have = false;
  for (int len = m; len <= int(chain.columns.size()); ++len) {
    std::vector<int> cols(chain.columns.begin(), chain.columns.begin() + len);
    HnfRoundResult r = hnf_round(a.select_cols(cols), target);
    if (have && r.error >= best.error) continue;
    SparseSolution s;
    s.x.assign(n, Int(0));
    for (int j = 0; j < len; ++j) s.x[cols[j]] += r.x[j];
    s.support = support_of(s.x);
    IntVec ax = mat_vec(a, s.x);
    RatVec res(m);
    for (int i = 0; i < m; ++i) res[i] = Rat(ax[i]) - target[i];
    s.error = linf_norm(res);
    s.norm = NormTag::linf;
    best = std::move(s);
    have = true;
  }
  best.certified_bound = chain.certified_bound;
  return best;
}

}  // namespace sparseapprox
