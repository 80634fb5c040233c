#include "trigmom/numeric.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <thread>
#include <vector>

namespace trigmom::detail {

double op_norm(const CMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

double min_hermitian_eig(const CMatrix& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw numeric_error("eigensolver failed");
  return es.eigenvalues()(0);
}

bool approx_hermitian(const CMatrix& m, double tol) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool approx_psd(const CMatrix& m, double tol) {
  if (m.rows() == 0) return true;
  if (!approx_hermitian(m, tol)) return false;
  return min_hermitian_eig(hermitian_part(m)) >= -tol;
}

CMatrix mgs_extend(const CMatrix& prefix, const CMatrix& candidates,
                   double rank_tol) {
  const Eigen::Index r = prefix.rows() > 0 ? prefix.rows() : candidates.rows();
  std::vector<CVector> accepted;
  for (Eigen::Index c = 0; c < candidates.cols(); ++c) {
    CVector v = candidates.col(c);
    const double n0 = v.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < prefix.cols(); ++k)
        v -= prefix.col(k).dot(v) * prefix.col(k);
      for (const CVector& q : accepted) v -= q.dot(v) * q;
    }
    const double n1 = v.norm();
    if (n0 > 0.0 && n1 > rank_tol * n0) accepted.push_back(v / n1);
  }
  CMatrix q(r, static_cast<Eigen::Index>(accepted.size()));
  for (std::size_t k = 0; k < accepted.size(); ++k)
    q.col(static_cast<Eigen::Index>(k)) = accepted[k];
  return q;
}

CMatrix pseudo_inverse(const CMatrix& m, double rank_tol) {
  if (m.rows() == 0 || m.cols() == 0) return CMatrix::Zero(m.cols(), m.rows());
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double cut = rank_tol * sigma(0);
  RVector inv = RVector::Zero(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > cut) inv(i) = 1.0 / sigma(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

int svd_rank(const CMatrix& m, double rank_tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sigma = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > rank_tol * sigma(0)) ++rank;
  return rank;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace trigmom::detail
