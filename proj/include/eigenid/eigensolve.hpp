#pragma once

#include <cstddef>
#include <vector>

#include "eigenid/matrix.hpp"

namespace eigenid {

// Eigenvalues of a matrix or a minor, always sorted ascending.
struct Spectrum {
  std::vector<double> values;

  std::size_t n() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double min() const { return values.front(); }
  double max() const { return values.back(); }
  double range() const { return values.back() - values.front(); }
  double sum() const;
};

// Result of Householder reduction: orthogonally similar to the source.
struct TridiagonalForm {
  std::vector<double> diag;     // n values
  std::vector<double> offdiag;  // n-1 values
};

struct EigenDecomposition {
  Spectrum spectrum;
  // Row-major n x n; column i is the unit eigenvector for spectrum[i].
  std::vector<double> vectors;
  std::size_t n = 0;

  double vector_entry(std::size_t row, std::size_t col) const {
    return vectors[row * n + col];
  }
};

// Householder reduction to tridiagonal form, eigenvalues-only variant
// (no accumulation of the orthogonal factor).
TridiagonalForm tridiagonalize(const SymmetricMatrix& a);

// Implicit-shift QL on the tridiagonal form of A. Eigenvalues only, sorted
// ascending. Throws ConvergenceFailure if the total QL iteration count
// exceeds 30*n.
Spectrum eigenvalues(const SymmetricMatrix& a);
Spectrum eigenvalues(TridiagonalForm t);

// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
// tol (default 1e-12 * ||A||_F). Independent of the QL path; used as the
// verification oracle throughout. Throws ConvergenceFailure after 100 sweeps.
EigenDecomposition jacobi_eigendecomposition(const SymmetricMatrix& a,
                                             double tol = 0.0);

}  // namespace eigenid
