#pragma once

#include <vector>

#include "trigmom/isometry.hpp"
#include "trigmom/types.hpp"

namespace trigmom {

/// The free parameter of the solution formula: an analytic function on the
/// unit disk whose values contract the first defect subspace into the
/// second.  Represented as a matrix polynomial in zeta (a single coefficient
/// makes it constant).  Construction verifies the contraction bound on a
/// circle of radius 1 - 1e-6 (256 samples, slack 1e-12); analyticity is
/// structural.
class SchurParameter {
 public:
  static SchurParameter constant(CMatrix value);
  static SchurParameter polynomial(std::vector<CMatrix> coefficients);
  /// The unique parameter between trivial defect subspaces (m = 0).
  static SchurParameter empty();

  bool is_constant() const { return coeffs_.size() <= 1; }
  int rows() const;
  int cols() const;
  CMatrix operator()(Complex zeta) const;
  const std::vector<CMatrix>& coefficients() const { return coeffs_; }

 private:
  explicit SchurParameter(std::vector<CMatrix> coefficients);
  std::vector<CMatrix> coeffs_;
};

/// Coefficients of the linear-fractional solution formula at a point zeta:
///
///   M(zeta) = direct + out_map . Phi(zeta)
///             . (I + loop . Phi(zeta))^{-1} . in_map,
///
/// together with the four operator blocks behind them, written as full r x r
/// matrices supported on the appropriate subspaces.  The moment-space
/// coefficients are expressed in the defect bases of the IsometryRep, so
/// they are basis-covariant; M itself is basis-invariant.
struct NevanlinnaCoefficients {
  Complex zeta;

  CMatrix direct;   // p x p; equals S_0 at zeta = 0
  CMatrix out_map;  // p x m
  CMatrix loop;     // m x m
  CMatrix in_map;   // m x p

  CMatrix dom_resolvent;  // resolvent of the compressed shift on the domain
  CMatrix dom_inject;     // -zeta . dom_resolvent . P_domain
  CMatrix defect_mix;     // feedback block on the domain complement
  CMatrix cross;          // -zeta . P_complement . A . dom_resolvent
};

/// One evaluation of the disk transform of a solution measure, i.e. the
/// integral of (1 + zeta e^{it}) / (1 - zeta e^{it}) against F.  Its
/// Hermitian part is PSD on the disk.
struct HerglotzSample {
  Complex zeta;
  CMatrix M;
};

NevanlinnaCoefficients coefficients_at(const IsometryRep& ir, Complex zeta);

/// The parameterization formula.  With trivial defects the formula collapses
/// to the direct term and every parameter yields the same (unique) value.
HerglotzSample evaluate_M(const IsometryRep& ir, const SchurParameter& phi,
                          Complex zeta);

/// Independent evaluation through the resolvent of the extended operator:
/// M = 2 I^* (E - zeta (A + extension))^{-1} I - S_0, for constant
/// parameters.  Agrees with evaluate_M identically; used as a cross-check.
HerglotzSample evaluate_M_resolvent(const IsometryRep& ir,
                                    const SchurParameter& phi, Complex zeta);

/// Recovers moment estimates from M by discrete Fourier inversion on the
/// circle |zeta| = radius: returns S_hat_0..S_hat_n_max, where the transform
/// expands as S_0 + 2 sum_{n>=1} zeta^n S_n.  n_samples must be a power of
/// two with n_samples >= 4 * n_max.
std::vector<CMatrix> taylor_moments(const IsometryRep& ir,
                                    const SchurParameter& phi, int n_max,
                                    double radius, int n_samples);

/// Default sample count for taylor_moments.
int default_taylor_samples(int d);

}  // namespace trigmom
