#pragma once

#include <initializer_list>

#include "types.hpp"

namespace sparseapprox {

// Dense integer matrix, row major.
class IntMat {
 public:
  IntMat() : rows_(0), cols_(0) {}
  IntMat(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols) {
    if (rows < 0 || cols < 0) fail(Errc::bad_input, "negative matrix dimension");
  }
  IntMat(std::initializer_list<std::initializer_list<Int>> rows);

  static IntMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int& at(int i, int j) { return e_[size_t(i) * cols_ + j]; }
  const Int& at(int i, int j) const { return e_[size_t(i) * cols_ + j]; }

  IntVec col(int j) const;
  void set_col(int j, const IntVec& v);

  // Submatrix made of the listed columns, in the given order.
  IntMat select_cols(const std::vector<int>& idx) const;

  bool operator==(const IntMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }

 private:
  int rows_, cols_;
  std::vector<Int> e_;
};

IntMat mat_mul(const IntMat& a, const IntMat& b);
IntVec mat_vec(const IntMat& a, const IntVec& x);
RatVec mat_vec(const IntMat& a, const RatVec& x);

RatVec to_rat(const IntVec& v);
Rat linf_norm(const RatVec& v);

}  // namespace sparseapprox
