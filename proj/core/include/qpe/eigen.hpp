#pragma once

#include <vector>

#include "qpe/matrix.hpp"

namespace qpe {

/// Eigenvalues (ascending) and matching eigenvector columns of a Hermitian
/// matrix. The phase of each column is fixed so its largest-magnitude
/// component is real positive.
struct EigResult {
  std::vector<double> eigenvalues;
  CMatrix eigenvectors;
};

/// Cyclic complex Jacobi for Hermitian matrices. Dimensions here are small
/// (at most 2^14, and far smaller in practice), where Jacobi is accurate to
/// near machine precision. Throws ValidationError when the input is not
/// Hermitian within `hermiticity_tol`.
EigResult jacobi_hermitian(const CMatrix& m, double hermiticity_tol = 1e-10);

/// Largest singular value via the Hermitian eigendecomposition of M'M.
double spectral_norm(const CMatrix& m);

/// Eigendecomposition of a unitary (more generally normal) matrix through
/// the commuting Hermitian pair (U+U')/2 and (U-U')/2i: Jacobi on the first,
/// then Jacobi on the second restricted to each degenerate cluster.
struct UnitaryEig {
  std::vector<cplx> eigenvalues;  // on the unit circle
  CMatrix eigenvectors;           // columns, unitary
};
UnitaryEig eigendecompose_unitary(const CMatrix& u);

}  // namespace qpe
