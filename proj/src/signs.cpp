#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "eigenid/errors.hpp"
#include "eigenid/identity.hpp"

namespace eigenid {

namespace {

// Solves M x = rhs in place by Gaussian elimination with partial pivoting.
// M is row-major m x m. Returns false on a zero pivot.
bool solve_linear(std::vector<double>& m_mat, std::vector<double>& rhs,
                  std::size_t m) {
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (std::abs(m_mat[r * m + col]) > std::abs(m_mat[pivot * m + col]))
        pivot = r;
    if (m_mat[pivot * m + col] == 0.0) return false;
    if (pivot != col) {
      for (std::size_t c = 0; c < m; ++c)
        std::swap(m_mat[col * m + c], m_mat[pivot * m + c]);
      std::swap(rhs[col], rhs[pivot]);
    }
    const double inv = 1.0 / m_mat[col * m + col];
    for (std::size_t r = col + 1; r < m; ++r) {
      const double f = m_mat[r * m + col] * inv;
      if (f == 0.0) continue;
      for (std::size_t c = col; c < m; ++c)
        m_mat[r * m + c] -= f * m_mat[col * m + c];
      rhs[r] -= f * rhs[col];
    }
  }
  for (std::size_t col = m; col-- > 0;) {
    double s = rhs[col];
    for (std::size_t c = col + 1; c < m; ++c)
      s -= m_mat[col * m + c] * rhs[c];
    rhs[col] = s / m_mat[col * m + col];
  }
  return true;
}

}  // namespace

std::vector<double> recover_signs(const SymmetricMatrix& a, std::size_t i,
                                  const std::vector<double>& magnitudes,
                                  double lambda_i, double sign_tol) {
  const std::size_t n = a.n();
  if (magnitudes.size() != n)
    throw DimensionMismatch("magnitude vector length does not match n");
  (void)i;

  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j)
    v[j] = std::sqrt(std::clamp(magnitudes[j], 0.0, 1.0));

  const auto b = [&](std::size_t r, std::size_t c) {
    return a(r, c) - (r == c ? lambda_i : 0.0);
  };

  if (n > 1) {
    // Anchor the best-conditioned component: with row and column m removed,
    // (A - lambda I) restricted to the rest is invertible exactly when
    // v_m != 0, so pivot on the largest magnitude.
    std::size_t m_idx = 0;
    for (std::size_t j = 1; j < n; ++j)
      if (magnitudes[j] > magnitudes[m_idx]) m_idx = j;

    // Rows r != m of (A - lambda I) v = 0 give
    //   sum_{k != m} B[r][k] v_k = -B[r][m] v_m.
    const std::size_t m = n - 1;
    std::vector<double> mat(m * m);
    std::vector<double> rhs(m);
    for (std::size_t r = 0, rr = 0; r < n; ++r) {
      if (r == m_idx) continue;
      for (std::size_t c = 0, cc = 0; c < n; ++c) {
        if (c == m_idx) continue;
        mat[rr * m + cc] = b(r, c);
        ++cc;
      }
      rhs[rr] = -b(r, m_idx) * v[m_idx];
      ++rr;
    }
    if (!solve_linear(mat, rhs, m))
      throw SignRecoveryFailure("row equations are singular at the anchor");

    // Keep the computed magnitudes; take only the signs from the solve.
    for (std::size_t r = 0, rr = 0; r < n; ++r) {
      if (r == m_idx) continue;
      if (magnitudes[r] > sign_tol && rhs[rr] < 0.0) v[r] = -v[r];
      ++rr;
    }
  }

  // Convention: first component above sign_tol is positive.
  for (std::size_t j = 0; j < n; ++j)
    if (magnitudes[j] > sign_tol) {
      if (v[j] < 0.0)
        for (double& x : v) x = -x;
      break;
    }

  // Verify against the eigenvector equation.
  double residual_sq = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    double row = 0.0;
    for (std::size_t c = 0; c < n; ++c) row += b(r, c) * v[c];
    residual_sq += row * row;
  }
  const double residual = std::sqrt(residual_sq);
  const double bound = 1e-6 * a.frobenius_norm();
  if (residual > bound)
    throw SignRecoveryFailure("sign recovery residual " +
                              std::to_string(residual) + " exceeds " +
                              std::to_string(bound));
  return v;
}

}  // namespace eigenid
