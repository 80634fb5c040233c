#pragma once

#include "trigmom/moments.hpp"
#include "trigmom/types.hpp"

namespace trigmom {

inline constexpr double kDefaultRankTol = 1e-10;

/// Coordinates for the quotient Hilbert space of the moment form.  V is an
/// r x (d+1)p factor with T ~ V^* V, so the class of the stacked vector
/// e_j (x) h gets coordinates V (e_j (x) h) and inner products reproduce
/// (S_{j-k} h, g).
struct ProblemSpace {
  MomentSequence ms;
  CMatrix V;
  double rank_tol = kDefaultRankTol;
  double toeplitz_norm = 0.0;

  int rank() const { return static_cast<int>(V.rows()); }
};

/// Rank-revealing factorization of the Toeplitz form by Hermitian
/// eigendecomposition; eigenvalues at or below rank_tol * lambda_max are
/// treated as zero.  Throws not_solvable_error when lambda_min < -tf.tol.
ProblemSpace factor_gram(const ToeplitzForm& tf,
                         double rank_tol = kDefaultRankTol);

/// Coordinates of the class of h placed in block j.
CVector embed(const ProblemSpace& ps, const CVector& h, int j);

/// r x p matrix of the embedding h -> class of h in block 0; its Gram
/// product reproduces S_0.
CMatrix embedding_operator(const ProblemSpace& ps);

}  // namespace trigmom
