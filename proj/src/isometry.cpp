#include "trigmom/isometry.hpp"

#include <cmath>
#include <string>

#include "trigmom/numeric.hpp"

namespace trigmom {

IsometryRep build_isometry(const ProblemSpace& ps, double rank_tol) {
  if (rank_tol < 0.0) rank_tol = ps.rank_tol;
  const int p = ps.ms.p;
  const int d = ps.ms.d;
  if (d < 1) throw std::invalid_argument("build_isometry: requires d >= 1");
  const Eigen::Index r = ps.V.rows();

  const CMatrix x = ps.V.leftCols(static_cast<Eigen::Index>(d) * p);
  const CMatrix y = ps.V.rightCols(static_cast<Eigen::Index>(d) * p);
  const CMatrix embed_op = embedding_operator(ps);

  // The Gram identity X^*X = Y^*Y is what makes the shift well-defined and
  // isometric; a violation signals an inconsistent factor.
  const double scale = std::max(1.0, ps.toeplitz_norm);
  const double gram_gap =
      detail::op_norm(x.adjoint() * x - y.adjoint() * y);
  if (gram_gap > 1e-10 * scale)
    throw numeric_error(
        "build_isometry: domain/image Gram mismatch " +
        std::to_string(gram_gap) + ", shift is not well-defined");

  const CMatrix q_d = detail::mgs_extend(CMatrix(r, 0), x, rank_tol);
  const int tau = static_cast<int>(q_d.cols());
  if (detail::svd_rank(x, rank_tol) != tau)
    throw numeric_error(
        "build_isometry: domain rank is ambiguous at rank_tol");

  const CMatrix a = y * detail::pseudo_inverse(x, rank_tol);

  const CMatrix q_r = detail::mgs_extend(CMatrix(r, 0), a * q_d, rank_tol);
  if (q_r.cols() != tau)
    throw numeric_error("build_isometry: range rank differs from domain rank");

  for (int k = 0; k < tau; ++k) {
    const double len = (a * q_d.col(k)).norm();
    if (std::abs(len - 1.0) > 1e-8)
      throw numeric_error("build_isometry: shift is not isometric on basis "
                          "vector " + std::to_string(k));
  }

  // Defect bases from the residuals of the last and first block generators.
  const CMatrix q_nd = detail::mgs_extend(q_d, ps.V.rightCols(p), rank_tol);
  const CMatrix q_nr = detail::mgs_extend(q_r, ps.V.leftCols(p), rank_tol);
  const int m = static_cast<int>(r) - tau;
  if (q_nd.cols() != m || q_nr.cols() != m)
    throw numeric_error("build_isometry: defect dimensions inconsistent "
                        "with rank count");

  const CMatrix ta = q_d.adjoint() * a * q_d;
  return IsometryRep{ps,
                     x,
                     y,
                     q_d,
                     q_r,
                     q_nd,
                     q_nr,
                     a,
                     embed_op,
                     ta,
                     q_d.adjoint() * embed_op,
                     q_nd.adjoint() * a * q_d,
                     q_d.adjoint() * q_nr,
                     q_nd.adjoint() * q_nr,
                     detail::op_norm(ta)};
}

std::pair<int, int> defect_numbers(const IsometryRep& ir) {
  return {static_cast<int>(ir.Q_ND.cols()), static_cast<int>(ir.Q_NR.cols())};
}

bool is_determinate(const IsometryRep& ir) {
  const auto [m, m_prime] = defect_numbers(ir);
  return m == 0 || m_prime == 0;
}

}  // namespace trigmom
