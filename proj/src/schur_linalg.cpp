#include "trigmom/schur_linalg.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include "trigmom/numeric.hpp"

namespace trigmom {
namespace {

// Singular values at tolerance; null when the matrix is degenerate-empty.
bool invertible_at(const CMatrix& m, double tol) {
  if (m.rows() == 0) return true;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sigma = svd.singularValues();
  return sigma(0) > 0.0 && sigma(sigma.size() - 1) >= tol * sigma(0);
}

}  // namespace

BlockOperator::BlockOperator(CMatrix a, CMatrix b, CMatrix c, CMatrix d)
    : A(std::move(a)), B(std::move(b)), C(std::move(c)), D(std::move(d)) {
  if (A.rows() != A.cols() || D.rows() != D.cols())
    throw dimension_error("BlockOperator: diagonal blocks must be square");
  if (B.rows() != A.rows() || B.cols() != D.cols() || C.rows() != D.rows() ||
      C.cols() != A.cols())
    throw dimension_error("BlockOperator: off-diagonal blocks mismatch");
}

CMatrix BlockOperator::dense() const {
  CMatrix m(n1() + n2(), n1() + n2());
  m.topLeftCorner(n1(), n1()) = A;
  m.topRightCorner(n1(), n2()) = B;
  m.bottomLeftCorner(n2(), n1()) = C;
  m.bottomRightCorner(n2(), n2()) = D;
  return m;
}

CMatrix schur_complement(const BlockOperator& bo, double tol) {
  if (!invertible_at(bo.A, tol))
    throw singular_pivot_error(
        "schur_complement: pivot block singular at tolerance");
  if (bo.A.rows() == 0) return bo.D;
  Eigen::PartialPivLU<CMatrix> lu(bo.A);
  return bo.D - bo.C * lu.solve(bo.B);
}

BlockOperator block_inverse(const BlockOperator& bo, double tol) {
  if (!invertible_at(bo.A, tol))
    throw singular_pivot_error(
        "block_inverse: pivot block singular at tolerance");
  const Eigen::Index n1 = bo.A.rows();
  const Eigen::Index n2 = bo.D.rows();
  if (n1 == 0) {
    if (!invertible_at(bo.D, tol))
      throw singular_schur_error(
          "block_inverse: Schur complement singular at tolerance");
    Eigen::PartialPivLU<CMatrix> lu(bo.D);
    return BlockOperator(bo.A, bo.B, bo.C,
                         lu.solve(CMatrix::Identity(n2, n2)));
  }

  Eigen::PartialPivLU<CMatrix> lu_a(bo.A);
  const CMatrix a_inv = lu_a.solve(CMatrix::Identity(n1, n1));
  const CMatrix a_inv_b = lu_a.solve(bo.B);
  const CMatrix c_a_inv = bo.C * a_inv;
  const CMatrix schur = bo.D - bo.C * a_inv_b;
  if (!invertible_at(schur, tol))
    throw singular_schur_error(
        "block_inverse: Schur complement singular at tolerance");
  if (n2 == 0) return BlockOperator(a_inv, bo.B, bo.C, schur);

  Eigen::PartialPivLU<CMatrix> lu_s(schur);
  const CMatrix s_inv = lu_s.solve(CMatrix::Identity(n2, n2));
  const CMatrix s_inv_c_a_inv = lu_s.solve(c_a_inv);
  return BlockOperator(a_inv + a_inv_b * s_inv_c_a_inv, -a_inv_b * s_inv,
                       -s_inv_c_a_inv, s_inv);
}

CMatrix resolvent_contraction(const CMatrix& K, Complex zeta) {
  return resolvent_contraction(K, zeta, detail::op_norm(K));
}

CMatrix resolvent_contraction(const CMatrix& K, Complex zeta, double k_norm) {
  if (K.rows() != K.cols())
    throw dimension_error("resolvent_contraction: matrix must be square");
  const Eigen::Index n = K.rows();
  if (n == 0) return CMatrix(0, 0);
  if (std::abs(zeta) * k_norm >= 1.0)
    throw std::domain_error(
        "resolvent_contraction: |zeta| * ||K|| >= 1, outside the guaranteed "
        "regime");
  const CMatrix lhs = CMatrix::Identity(n, n) - zeta * K;
  Eigen::PartialPivLU<CMatrix> lu(lhs);
  CMatrix x = lu.solve(CMatrix::Identity(n, n));
  const double residual = (lhs * x - CMatrix::Identity(n, n)).norm();
  if (residual > 1e-11)
    throw numeric_error("resolvent_contraction: solve residual " +
                        std::to_string(residual) + " exceeds 1e-11");
  return x;
}

}  // namespace trigmom
