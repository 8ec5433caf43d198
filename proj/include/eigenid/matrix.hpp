#pragma once

#include <cstddef>
#include <vector>

namespace eigenid {

enum class SymmetryPolicy {
  kStrict,      // reject input with any a_rc != a_cr
  kSymmetrize,  // replace A with (A + A^T)/2
};

// Dense real symmetric n x n matrix, row-major. Immutable after
// construction, so instances can be shared across threads freely.
class SymmetricMatrix {
 public:
  // Builds from a dense row-major array of n*n values. Throws
  // AsymmetricInput (strict policy), NonFiniteEntry, or DimensionMismatch.
  static SymmetricMatrix build(std::size_t n, std::vector<double> entries,
                               SymmetryPolicy policy = SymmetryPolicy::kStrict);

  static SymmetricMatrix diagonal(const std::vector<double>& d);
  static SymmetricMatrix identity(std::size_t n);

  std::size_t n() const { return n_; }
  double operator()(std::size_t r, std::size_t c) const {
    return entries_[r * n_ + c];
  }
  const std::vector<double>& entries() const { return entries_; }

  // The (n-1) x (n-1) matrix with row j and column j removed. Throws
  // IndexOutOfRange or MatrixTooSmall (n == 1).
  SymmetricMatrix minor_matrix(std::size_t j) const;

  double trace() const;
  double frobenius_norm() const;

  // Returns A scaled entry-wise; symmetry is preserved by construction.
  SymmetricMatrix scaled(double factor) const;

 private:
  SymmetricMatrix(std::size_t n, std::vector<double> entries)
      : n_(n), entries_(std::move(entries)) {}

  std::size_t n_;
  std::vector<double> entries_;
};

}  // namespace eigenid
