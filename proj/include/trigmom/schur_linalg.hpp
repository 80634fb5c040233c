#pragma once

#include "trigmom/types.hpp"

namespace trigmom {

inline constexpr double kDefaultInvertTol = 1e-10;

/// A bounded operator written against an orthogonal splitting of its space
/// into two subspaces of dimensions n1 and n2:
///
///   M = [ A  B ]      A: n1 x n1,  B: n1 x n2,
///       [ C  D ]      C: n2 x n1,  D: n2 x n2.
struct BlockOperator {
  CMatrix A, B, C, D;

  BlockOperator(CMatrix a, CMatrix b, CMatrix c, CMatrix d);

  int n1() const { return static_cast<int>(A.rows()); }
  int n2() const { return static_cast<int>(D.rows()); }
  CMatrix dense() const;
};

/// D - C A^{-1} B, with A^{-1} applied through a linear solve.  "Invertible"
/// means smallest singular value >= tol * largest.
CMatrix schur_complement(const BlockOperator& bo,
                         double tol = kDefaultInvertTol);

/// Frobenius-style block inversion: requires both the pivot block A and the
/// Schur complement to be invertible at tolerance, and reports which one
/// failed (singular_pivot_error / singular_schur_error).  When A is
/// invertible, a singular Schur complement is equivalent to M itself being
/// singular.
BlockOperator block_inverse(const BlockOperator& bo,
                            double tol = kDefaultInvertTol);

/// (E - zeta K)^{-1} for a contraction K, by LU solve.  Refused when
/// |zeta| * ||K|| >= 1; the solve residual is verified below 1e-11.
CMatrix resolvent_contraction(const CMatrix& K, Complex zeta);

/// Same, with ||K||_2 supplied by the caller.
CMatrix resolvent_contraction(const CMatrix& K, Complex zeta, double k_norm);

}  // namespace trigmom
