#pragma once

#include <utility>

#include "trigmom/hilbert.hpp"
#include "trigmom/types.hpp"

namespace trigmom {

/// The shift isometry of the space: A maps the class of h in block j to the
/// class of h in block j+1.  A is stored as an r x r matrix acting as zero
/// on the orthogonal complement of its domain, so extensions by a parameter
/// on the defect subspaces are plain matrix sums.
struct IsometryRep {
  ProblemSpace ps;

  CMatrix X;     // r x dp, generators of the domain (blocks 0..d-1)
  CMatrix Y;     // r x dp, their images (blocks 1..d)
  CMatrix Q_D;   // r x tau, orthonormal basis of the domain D(A)
  CMatrix Q_R;   // r x tau, orthonormal basis of the range R(A)
  CMatrix Q_ND;  // r x m, orthonormal basis of H - D(A)
  CMatrix Q_NR;  // r x m, orthonormal basis of H - R(A)
  CMatrix A;     // r x r

  CMatrix embed_op;  // r x p, the block-0 embedding

  // Compressions reused by every coefficient evaluation.
  CMatrix TA;      // tau x tau, Q_D^* A Q_D
  CMatrix DI;      // tau x p,  Q_D^* embed_op
  CMatrix NAD;     // m x tau,  Q_ND^* A Q_D
  CMatrix DNR;     // tau x m,  Q_D^* Q_NR
  CMatrix NNR;     // m x m,    Q_ND^* Q_NR
  double TA_norm = 0.0;

  int rank() const { return static_cast<int>(ps.V.rows()); }
  int tau() const { return static_cast<int>(Q_D.cols()); }
  int defect() const { return static_cast<int>(Q_ND.cols()); }
};

/// Assembles the shift generators, verifies the Gram identity that makes the
/// shift well-defined and isometric, and orthogonalizes the generator
/// sequences in block order (dropping dependent vectors at rank_tol) to get
/// the domain, range and defect bases.  A negative rank_tol inherits the
/// tolerance the space was factored with, keeping one rank decision across
/// the pipeline.
IsometryRep build_isometry(const ProblemSpace& ps, double rank_tol = -1.0);

/// Dimensions of the two defect subspaces; equal in finite dimension.
std::pair<int, int> defect_numbers(const IsometryRep& ir);

/// True iff a defect number vanishes: the moment problem then has exactly
/// one solution.
bool is_determinate(const IsometryRep& ir);

}  // namespace trigmom
