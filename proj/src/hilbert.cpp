#include "trigmom/hilbert.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "trigmom/numeric.hpp"

namespace trigmom {

ProblemSpace factor_gram(const ToeplitzForm& tf, double rank_tol) {
  if (!(rank_tol >= 0.0))
    throw std::invalid_argument("factor_gram: rank_tol must be >= 0");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(tf.T);
  if (es.info() != Eigen::Success)
    throw numeric_error("factor_gram: eigensolver failed");
  const RVector& lambda = es.eigenvalues();  // ascending
  const Eigen::Index n = lambda.size();
  if (lambda(0) < -tf.tol)
    throw not_solvable_error("factor_gram: form is not positive semidefinite");

  const double cut = rank_tol * std::max(0.0, lambda(n - 1));
  Eigen::Index first = n;
  while (first > 0 && lambda(first - 1) > cut) --first;
  const Eigen::Index r = n - first;

  CMatrix v(r, n);
  for (Eigen::Index i = 0; i < r; ++i) {
    // Eigenvalues kept above the cut are positive up to the solvability
    // tolerance; clamp before the square root.
    const double l = std::max(0.0, lambda(first + i));
    v.row(i) = std::sqrt(l) * es.eigenvectors().col(first + i).adjoint();
  }
  return ProblemSpace{tf.ms, std::move(v), rank_tol, tf.norm};
}

CVector embed(const ProblemSpace& ps, const CVector& h, int j) {
  if (j < 0 || j > ps.ms.d)
    throw std::out_of_range("embed: block index out of range");
  if (h.size() != ps.ms.p)
    throw dimension_error("embed: vector has wrong dimension");
  return ps.V.middleCols(static_cast<Eigen::Index>(j) * ps.ms.p, ps.ms.p) * h;
}

CMatrix embedding_operator(const ProblemSpace& ps) {
  return ps.V.leftCols(ps.ms.p);
}

}  // namespace trigmom
