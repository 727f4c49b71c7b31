#pragma once

#include "matrix.hpp"

namespace sparseapprox {

// Column-style Hermite normal form of a full-row-rank m x l integer matrix D:
// D * U = [H | 0] with U unimodular, H lower triangular, positive diagonal and
// off-diagonal entries reduced into [0, H(i,i)).
struct HnfResult {
  IntMat h;        // m x m
  IntMat u;        // l x l
  Int det_lambda;  // product of the diagonal of h = det of the column lattice
};

HnfResult hnf(const IntMat& d);

// Fraction-free (Bareiss) determinant of a square integer matrix.
Int determinant(const IntMat& m);

// Exact solution of M x = v for invertible integer M and rational v.
RatVec solve_rational(const IntMat& m, const RatVec& v);

// Membership of an integer vector in the column lattice D Z^l.
bool in_lattice(const IntMat& d, const IntVec& v);

// ||B^{-1} v||_inf for invertible B; the norm whose unit ball is the
// parallelepiped spanned by +-columns of B.
Rat pnorm(const IntMat& b, const RatVec& v);

}  // namespace sparseapprox
