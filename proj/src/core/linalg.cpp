#include "linalg.hpp"

namespace sparseapprox {

namespace {

// Apply the 2x2 unimodular column operation
//   (col_a, col_b) <- (p*col_a + q*col_b, r*col_a + s*col_b)
void col_op(IntMat& m, int a, int b, const Int& p, const Int& q, const Int& r, const Int& s) {
  for (int i = 0; i < m.rows(); ++i) {
    Int na = p * m.at(i, a) + q * m.at(i, b);
    Int nb = r * m.at(i, a) + s * m.at(i, b);
    m.at(i, a) = na;
    m.at(i, b) = nb;
  }
}

void col_axpy(IntMat& m, int dst, int src, const Int& c) {
  if (c == 0) return;
  for (int i = 0; i < m.rows(); ++i) m.at(i, dst) -= c * m.at(i, src);
}

void col_negate(IntMat& m, int j) {
  for (int i = 0; i < m.rows(); ++i) m.at(i, j) = -m.at(i, j);
}

}  // namespace

HnfResult hnf(const IntMat& d) {
  const int m = d.rows(), l = d.cols();
  if (m == 0 || l < m) fail(Errc::rank_deficient, "matrix has fewer columns than rows");
  IntMat w = d;
  IntMat u = IntMat::identity(l);

  for (int r = 0; r < m; ++r) {
    // Collapse row r on columns r..l-1 into a single pivot via extended gcd.
    for (int j = r + 1; j < l; ++j) {
      if (w.at(r, j) == 0) continue;
      Int g, p, q;
      mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), w.at(r, r).get_mpz_t(),
                 w.at(r, j).get_mpz_t());
      Int a = w.at(r, r) / g, b = w.at(r, j) / g;
      col_op(w, r, j, p, q, -b, a);
      col_op(u, r, j, p, q, -b, a);
    }
    if (w.at(r, r) == 0) fail(Errc::rank_deficient, "rank below row count");
    if (w.at(r, r) < 0) {
      col_negate(w, r);
      col_negate(u, r);
    }
    // Canonicalize earlier columns of row r into [0, pivot).
    for (int j = 0; j < r; ++j) {
      Int q = floor_div(w.at(r, j), w.at(r, r));
      col_axpy(w, j, r, q);
      col_axpy(u, j, r, q);
    }
  }

  HnfResult res;
  res.h = IntMat(m, m);
  res.det_lambda = 1;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) res.h.at(i, j) = w.at(i, j);
    res.det_lambda *= w.at(i, i);
  }
  res.u = std::move(u);
  return res;
}

Int determinant(const IntMat& mat) {
  if (mat.rows() != mat.cols()) fail(Errc::not_square, "determinant of non-square matrix");
  const int n = mat.rows();
  if (n == 0) return 1;
  IntMat a = mat;
  Int prev(1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a.at(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        a.at(i, j) = t / prev;  // exact by Bareiss
      }
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

RatVec solve_rational(const IntMat& m, const RatVec& v) {
  if (m.rows() != m.cols()) fail(Errc::not_square, "solve with non-square matrix");
  const int n = m.rows();
  if (int(v.size()) != n) fail(Errc::dimension_mismatch, "rhs length mismatch");
  std::vector<RatVec> a(n, RatVec(n + 1, Rat(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = Rat(m.at(i, j));
    a[i][n] = v[i];
  }
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (a[i][k] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) fail(Errc::singular, "singular matrix");
    std::swap(a[k], a[piv]);
    for (int i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      Rat f = a[i][k] / a[k][k];
      for (int j = k; j <= n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  RatVec x(n);
  for (int i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

bool in_lattice(const IntMat& d, const IntVec& v) {
  if (int(v.size()) != d.rows()) fail(Errc::dimension_mismatch, "vector length mismatch");
  HnfResult h = hnf(d);
  // Forward substitution in H z = v must stay integral.
  IntVec z(d.rows());
  for (int i = 0; i < d.rows(); ++i) {
    Int rem = v[i];
    for (int j = 0; j < i; ++j) rem -= h.h.at(i, j) * z[j];
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem.get_mpz_t(), h.h.at(i, i).get_mpz_t());
    if (r != 0) return false;
    z[i] = q;
  }
  return true;
}

Rat pnorm(const IntMat& b, const RatVec& v) {
  return linf_norm(solve_rational(b, v));
}

}  // namespace sparseapprox
