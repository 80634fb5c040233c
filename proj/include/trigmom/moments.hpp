#pragma once

#include <string>
#include <vector>

#include "trigmom/types.hpp"

namespace trigmom {

inline constexpr double kDefaultPsdTol = 1e-10;

/// Prescribed moments S_0..S_d, each a complex p x p matrix.  Negative
/// indices are never stored; moment(-k) returns the adjoint of moment(k).
struct MomentSequence {
  int p = 0;
  int d = 0;
  std::vector<CMatrix> S;

  /// Validates shapes and requires S_0 Hermitian PSD within
  /// rel_tol * max(1, ||S_0||).  A non-Hermitian S_0 is rejected, not
  /// symmetrized.
  MomentSequence(int p_, int d_, std::vector<CMatrix> moments,
                 double rel_tol = kDefaultPsdTol);

  /// S_n for |n| <= d, applying S_{-k} = S_k^*.
  CMatrix moment(int n) const;
};

/// The Hermitian block Toeplitz matrix of the moment form: block (k, j)
/// equals S_{j-k}, so the form evaluates as g^* T h on stacked vectors.
struct ToeplitzForm {
  MomentSequence ms;
  CMatrix T;
  double tol = 0.0;  // absolute PSD tolerance
  double norm = 0.0; // ||T||_2
};

/// A measure concentrated at finitely many angles with PSD matrix weights.
/// Atoms are kept sorted with distinct angles in [0, 2pi); the distribution
/// function F(t) = sum over t_m < t of W_m is left-continuous with F(0) = 0.
struct AtomicMeasure {
  struct Atom {
    double t = 0.0;
    CMatrix W;
  };

  int p = 0;
  std::vector<Atom> atoms;

  AtomicMeasure(int p_, std::vector<Atom> atoms_,
                double rel_tol = kDefaultPsdTol);
};

ToeplitzForm build_toeplitz(const MomentSequence& ms,
                            double psd_tol_rel = kDefaultPsdTol);

struct SolvabilityResult {
  bool solvable = false;
  double lambda_min = 0.0;
};

/// Smallest eigenvalue test: solvable iff lambda_min(T) >= -tf.tol.
SolvabilityResult check_solvable(const ToeplitzForm& tf);

/// Direct integration: S_n = sum_m exp(i n t_m) W_m for n = 0..d.
MomentSequence moments_from_measure(const AtomicMeasure& mu, int d);

MomentSequence load_moments(const std::string& path);
void save_moments(const MomentSequence& ms, const std::string& path);

AtomicMeasure load_measure(const std::string& path);
void save_measure(const AtomicMeasure& mu, const std::string& path);

}  // namespace trigmom
