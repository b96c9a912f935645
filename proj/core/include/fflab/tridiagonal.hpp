#pragma once

#include <span>
#include <vector>

namespace fflab {

struct TridiagonalEigen {
  std::vector<double> values;            // ascending
  std::vector<double> first_components;  // first row of the eigenvector matrix, same order
};

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` (size n)
/// and off-diagonal `offdiag` (size n-1), by implicit QL with Wilkinson shifts.
///
/// When `want_first_components` is set, the first component of each normalized
/// eigenvector is tracked as well (the Golub-Welsch quantity). Throws
/// ConvergenceFailure naming the eigenvalue index after 60 sweeps without
/// deflation.
TridiagonalEigen symmetric_tridiagonal_eigen(std::span<const double> diag,
                                             std::span<const double> offdiag,
                                             bool want_first_components = false);

}  // namespace fflab
