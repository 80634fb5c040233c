#pragma once

#include <iosfwd>
#include <vector>

#include "trigmom/isometry.hpp"
#include "trigmom/moments.hpp"
#include "trigmom/nevanlinna.hpp"
#include "trigmom/types.hpp"

namespace trigmom {

inline constexpr double kDefaultPoissonRadius = 0.99;
inline constexpr int kDefaultPoissonGrid = 512;

/// A solution's distribution function sampled on an angle grid:
/// F(grid[0]) = 0, increments PSD, F(2pi) equal to S_0 up to the smoothing
/// and quadrature error of the recovery.
struct DistributionSamples {
  RVector grid;                 // ascending, grid[0] = 0, grid[N] = 2pi
  std::vector<CMatrix> values;  // Hermitian p x p per grid point
  double radius = 0.0;          // Poisson radius used
};

/// The solution attached to a constant unitary parameter: the extended
/// operator is unitary on the whole space, so its spectral decomposition
/// yields finitely many atoms (t_m, W_m) with W_m the compression of the
/// eigenprojection by the embedding.  Eigenvalues within 1e-8 share one
/// projection; atoms with negligible weight are dropped.
AtomicMeasure canonical_solution(const IsometryRep& ir,
                                 const CMatrix& phi_unitary);

/// Uniform grid with n_cells cells over [0, 2pi] (n_cells + 1 points).
RVector uniform_grid(int n_cells);

/// Recovers the distribution function from the disk transform by Poisson
/// inversion: F(b) - F(a) is the average of the Hermitian part of
/// M(radius e^{-i theta}) over [a, b], computed by composite Simpson
/// quadrature on a refinement of the grid.  Atoms appear smoothed over a
/// width of about (1 - radius); an atom at angle 0 contributes half its
/// mass near 0 and half near 2pi.
DistributionSamples recover_distribution(const IsometryRep& ir,
                                         const SchurParameter& phi,
                                         const RVector& grid,
                                         double radius = kDefaultPoissonRadius,
                                         int threads = 1);

/// Per-order residuals || sum_m e^{i n t_m} W_m - S_n ||_2, n = 0..d.
std::vector<double> verify_solution(const AtomicMeasure& mu,
                                    const MomentSequence& ms);

/// CSV with header "theta,F[0][0].re,F[0][0].im,...", row-major entries,
/// 17 significant digits.
void save_distribution_csv(const DistributionSamples& ds, std::ostream& out);

}  // namespace trigmom
