#include "matrix.hpp"

namespace sparseapprox {

Int int_from_string(const std::string& s) {
  if (s.empty()) fail(Errc::parse_error, "empty integer literal");
  Int v;
  if (mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
    fail(Errc::parse_error, "bad integer literal: " + s);
  return v;
}

Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(int_from_string(s));
  Int num = int_from_string(s.substr(0, slash));
  Int den = int_from_string(s.substr(slash + 1));
  if (den == 0) fail(Errc::parse_error, "zero denominator: " + s);
  Rat r(num, den);
  r.canonicalize();
  return r;
}

IntMat::IntMat(std::initializer_list<std::initializer_list<Int>> rows) {
  rows_ = int(rows.size());
  cols_ = rows_ ? int(rows.begin()->size()) : 0;
  e_.reserve(size_t(rows_) * cols_);
  for (const auto& r : rows) {
    if (int(r.size()) != cols_) fail(Errc::dimension_mismatch, "ragged initializer");
    for (const auto& v : r) e_.push_back(v);
  }
}

IntMat IntMat::identity(int n) {
  IntMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntVec IntMat::col(int j) const {
  IntVec v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

void IntMat::set_col(int j, const IntVec& v) {
  for (int i = 0; i < rows_; ++i) at(i, j) = v[i];
}

IntMat IntMat::select_cols(const std::vector<int>& idx) const {
  IntMat m(rows_, int(idx.size()));
  for (int j = 0; j < int(idx.size()); ++j) {
    if (idx[j] < 0 || idx[j] >= cols_) fail(Errc::bad_input, "column index out of range");
    for (int i = 0; i < rows_; ++i) m.at(i, j) = at(i, idx[j]);
  }
  return m;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
  if (a.cols() != b.rows()) fail(Errc::dimension_mismatch, "matrix product shape mismatch");
  IntMat c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Int& aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

IntVec mat_vec(const IntMat& a, const IntVec& x) {
  if (a.cols() != int(x.size())) fail(Errc::dimension_mismatch, "matrix-vector shape mismatch");
  IntVec y(a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) y[i] += a.at(i, j) * x[j];
  return y;
}

RatVec mat_vec(const IntMat& a, const RatVec& x) {
  if (a.cols() != int(x.size())) fail(Errc::dimension_mismatch, "matrix-vector shape mismatch");
  RatVec y(a.rows(), Rat(0));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) y[i] += Rat(a.at(i, j)) * x[j];
  return y;
}

RatVec to_rat(const IntVec& v) {
  RatVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

Rat linf_norm(const RatVec& v) {
  Rat m(0);
  for (const auto& x : v) {
    Rat a = rat_abs(x);
    if (a > m) m = a;
  }
  return m;
}

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::bad_input: return "bad_input";
    case Errc::dimension_mismatch: return "dimension_mismatch";
    case Errc::not_square: return "not_square";
    case Errc::rank_deficient: return "rank_deficient";
    case Errc::singular: return "singular";
    case Errc::bad_k: return "bad_k";
    case Errc::not_in_lattice: return "not_in_lattice";
    case Errc::not_simplicial: return "not_simplicial";
    case Errc::not_spanning: return "not_spanning";
    case Errc::no_witness: return "no_witness";
    case Errc::budget_exceeded: return "budget_exceeded";
    case Errc::pigeonhole_violation: return "pigeonhole_violation";
    case Errc::tau_search_failed: return "tau_search_failed";
    case Errc::rank_retry_exhausted: return "rank_retry_exhausted";
    case Errc::not_prime: return "not_prime";
    case Errc::bad_l: return "bad_l";
    case Errc::parse_error: return "parse_error";
  }
  return "unknown";
}

}  // namespace sparseapprox
