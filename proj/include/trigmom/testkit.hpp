#pragma once

#include <cstdint>

#include "trigmom/moments.hpp"
#include "trigmom/types.hpp"

namespace trigmom::testkit {

/// Recipe for a seeded random atomic measure.  weight_rank < 0 means
/// full-rank weights; 0 produces the zero measure.
struct GeneratorSpec {
  int p = 2;
  int d = 2;
  int n_atoms = 4;
  int weight_rank = -1;
  double min_separation = 0.2;
  std::uint64_t seed = 1;
};

/// Atoms at angles separated by at least min_separation (also across the
/// 0/2pi seam), with weights G G^* for seeded complex Gaussian G of the
/// prescribed rank.
AtomicMeasure random_atomic_measure(const GeneratorSpec& spec);

/// Seeded complex Gaussian matrix (independent standard normal real and
/// imaginary parts).
CMatrix random_gaussian(int rows, int cols, std::uint64_t seed);

/// A random m x m contraction: scaled Gaussian in the interior, or a Haar
/// unitary (QR of a Gaussian, diagonal phases normalized) on the boundary.
CMatrix random_contraction(int m, std::uint64_t seed, bool boundary);

/// Direct-sum transform of an atomic measure:
/// sum_m (1 + zeta e^{i t_m}) / (1 - zeta e^{i t_m}) W_m.  The independent
/// oracle for disk-transform evaluations of atomic solutions.
CMatrix brute_force_transform(const AtomicMeasure& mu, Complex zeta);

}  // namespace trigmom::testkit
