#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace trigmom {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Malformed input file: bad JSON, missing or mistyped fields.
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shapes do not match: wrong block sizes, list lengths, operator dimensions.
struct dimension_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The block Toeplitz form fails the positivity test; no solution exists.
struct not_solvable_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numerical failure: eigensolver breakdown, internal consistency violation.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The pivot block of a 2x2 block operator is singular at tolerance.
struct singular_pivot_error : numeric_error {
  using numeric_error::numeric_error;
};

/// The Schur complement is singular at tolerance (equivalently, the full
/// operator is singular when the pivot block is invertible).
struct singular_schur_error : numeric_error {
  using numeric_error::numeric_error;
};

}  // namespace trigmom
