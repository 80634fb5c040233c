#pragma once

#include <cstddef>
#include <functional>

#include "trigmom/types.hpp"

namespace trigmom::detail {

/// Largest singular value; 0 for empty matrices.
double op_norm(const CMatrix& m);

/// (M + M^*) / 2.
CMatrix hermitian_part(const CMatrix& m);

/// Smallest eigenvalue of a Hermitian matrix; 0 for empty matrices.
double min_hermitian_eig(const CMatrix& m);

bool approx_hermitian(const CMatrix& m, double tol);

/// Hermitian PSD within tol: Hermitian part deviation and most negative
/// eigenvalue both bounded by tol.
bool approx_psd(const CMatrix& m, double tol);

/// Modified Gram-Schmidt with one reorthogonalization pass.  Candidates are
/// processed in column order against `prefix` (assumed orthonormal) and the
/// columns accepted so far.  A candidate is dropped when its residual norm
/// falls to rank_tol times its initial norm.  Returns the accepted columns.
CMatrix mgs_extend(const CMatrix& prefix, const CMatrix& candidates,
                   double rank_tol);

/// Moore-Penrose pseudoinverse via SVD; singular values below
/// rank_tol * sigma_max are treated as zero.
CMatrix pseudo_inverse(const CMatrix& m, double rank_tol);

/// Numerical rank at the same threshold as pseudo_inverse.
int svd_rank(const CMatrix& m, double rank_tol);

/// Smallest power of two >= n (n >= 1).
std::size_t next_pow2(std::size_t n);

/// Runs fn(i) for i in [0, n), split over `threads` workers.  Each index is
/// processed exactly once; results must be written to disjoint slots so the
/// outcome is identical for any thread count.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace trigmom::detail
