#include "eigenid/matrix.hpp"

#include <cmath>
#include <string>

#include "eigenid/errors.hpp"

namespace eigenid {

SymmetricMatrix SymmetricMatrix::build(std::size_t n,
                                       std::vector<double> entries,
                                       SymmetryPolicy policy) {
  if (n < 1) throw DimensionMismatch("matrix dimension must be >= 1");
  if (entries.size() != n * n)
    throw DimensionMismatch("expected " + std::to_string(n * n) +
                            " entries, got " + std::to_string(entries.size()));
  for (double v : entries)
    if (!std::isfinite(v)) throw NonFiniteEntry("matrix entry is not finite");

  double max_asym = 0.0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c)
      max_asym = std::max(max_asym,
                          std::abs(entries[r * n + c] - entries[c * n + r]));

  if (max_asym > 0.0) {
    if (policy == SymmetryPolicy::kStrict)
      throw AsymmetricInput("input is not symmetric (max |a_rc - a_cr| = " +
                            std::to_string(max_asym) + ")");
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = r + 1; c < n; ++c) {
        double m = 0.5 * (entries[r * n + c] + entries[c * n + r]);
        entries[r * n + c] = m;
        entries[c * n + r] = m;
      }
  }
  return SymmetricMatrix(n, std::move(entries));
}

SymmetricMatrix SymmetricMatrix::diagonal(const std::vector<double>& d) {
  std::size_t n = d.size();
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = d[i];
  return build(n, std::move(e));
}

SymmetricMatrix SymmetricMatrix::identity(std::size_t n) {
  return diagonal(std::vector<double>(n, 1.0));
}

SymmetricMatrix SymmetricMatrix::minor_matrix(std::size_t j) const {
  if (n_ == 1) throw MatrixTooSmall("cannot take a minor of a 1x1 matrix");
  if (j >= n_)
    throw IndexOutOfRange("minor index " + std::to_string(j) +
                          " out of range for n = " + std::to_string(n_));
  std::size_t m = n_ - 1;
  std::vector<double> e(m * m);
  for (std::size_t r = 0, rr = 0; r < n_; ++r) {
    if (r == j) continue;
    for (std::size_t c = 0, cc = 0; c < n_; ++c) {
      if (c == j) continue;
      e[rr * m + cc] = entries_[r * n_ + c];
      ++cc;
    }
    ++rr;
  }
  return SymmetricMatrix(m, std::move(e));
}

double SymmetricMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += entries_[i * n_ + i];
  return t;
}

double SymmetricMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : entries_) s += v * v;
  return std::sqrt(s);
}

SymmetricMatrix SymmetricMatrix::scaled(double factor) const {
  std::vector<double> e(entries_);
  for (double& v : e) v *= factor;
  return SymmetricMatrix(n_, std::move(e));
}

}  // namespace eigenid
