#include "eigenid/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "eigenid/errors.hpp"

namespace eigenid {

double Spectrum::sum() const {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

// Householder reduction without accumulation of the orthogonal factor.
// Follows the classic EISPACK tred1 scheme on a scratch copy of A.
TridiagonalForm tridiagonalize(const SymmetricMatrix& src) {
  const std::size_t n = src.n();
  std::vector<double> a(src.entries());
  std::vector<double> d(n), e(n, 0.0);

  for (std::size_t i = n; i-- > 1;) {
    const std::size_t l = i - 1;
    double h = 0.0, scale = 0.0;
    if (l > 0) {
      for (std::size_t k = 0; k <= l; ++k) scale += std::abs(a[i * n + k]);
      if (scale == 0.0) {
        e[i] = a[i * n + l];
      } else {
        for (std::size_t k = 0; k <= l; ++k) {
          a[i * n + k] /= scale;
          h += a[i * n + k] * a[i * n + k];
        }
        double f = a[i * n + l];
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        a[i * n + l] = f - g;
        f = 0.0;
        for (std::size_t j = 0; j <= l; ++j) {
          g = 0.0;
          for (std::size_t k = 0; k <= j; ++k) g += a[j * n + k] * a[i * n + k];
          for (std::size_t k = j + 1; k <= l; ++k)
            g += a[k * n + j] * a[i * n + k];
          e[j] = g / h;
          f += e[j] * a[i * n + j];
        }
        const double hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
          f = a[i * n + j];
          e[j] = g = e[j] - hh * f;
          for (std::size_t k = 0; k <= j; ++k)
            a[j * n + k] -= f * e[k] + g * a[i * n + k];
        }
      }
    } else {
      e[i] = a[i * n + l];
    }
  }
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i * n + i];

  TridiagonalForm t;
  t.diag = std::move(d);
  t.offdiag.assign(n > 1 ? n - 1 : 0, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) t.offdiag[i] = e[i + 1];
  return t;
}

// Implicit-shift QL on a tridiagonal form. Eigenvalues only.
Spectrum eigenvalues(TridiagonalForm t) {
  const std::size_t n = t.diag.size();
  std::vector<double>& d = t.diag;
  std::vector<double> e(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = t.offdiag[i];

  const double eps = std::numeric_limits<double>::epsilon();
  const std::size_t max_iter = 30 * n;
  std::size_t iter = 0;

  for (std::size_t l = 0; l < n; ++l) {
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (++iter > max_iter)
          throw ConvergenceFailure(
              "QL iteration budget exhausted (" + std::to_string(max_iter) +
              " iterations) before isolating eigenvalue " + std::to_string(l));
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }

  std::sort(d.begin(), d.end());
  return Spectrum{std::move(d)};
}

Spectrum eigenvalues(const SymmetricMatrix& a) {
  return eigenvalues(tridiagonalize(a));
}

namespace {

double offdiagonal_norm(const std::vector<double>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) s += a[p * n + q] * a[p * n + q];
  return std::sqrt(2.0 * s);
}

}  // namespace

EigenDecomposition jacobi_eigendecomposition(const SymmetricMatrix& src,
                                             double tol) {
  const std::size_t n = src.n();
  if (tol <= 0.0) tol = 1e-12 * src.frobenius_norm();

  std::vector<double> a(src.entries());
  // Accumulated rotations, stored transposed (row c holds eigenvector
  // candidate c) so the per-rotation updates stay contiguous.
  std::vector<double> vt(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) vt[i * n + i] = 1.0;

  // Elements below skip_tol contribute less than tol to the off-diagonal
  // norm even if all n^2 of them sit at the threshold; zeroing them outright
  // keeps late sweeps cheap once convergence turns quadratic.
  const double skip_tol = n > 0 ? tol / static_cast<double>(n) : 0.0;

  const int max_sweeps = 100;
  int sweep = 0;
  while (offdiagonal_norm(a, n) > tol) {
    if (++sweep > max_sweeps)
      throw ConvergenceFailure("Jacobi sweeps exhausted (" +
                               std::to_string(max_sweeps) + ")");
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        if (std::abs(apq) < skip_tol) {
          a[p * n + q] = 0.0;
          a[q * n + p] = 0.0;
          continue;
        }
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double h = t * apq;

        a[p * n + p] -= h;
        a[q * n + q] += h;
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a[p * n + r];
          const double arq = a[q * n + r];
          const double np = arp - s * (arq + tau * arp);
          const double nq = arq + s * (arp - tau * arq);
          a[p * n + r] = np;
          a[q * n + r] = nq;
          a[r * n + p] = np;
          a[r * n + q] = nq;
        }
        double* vp = &vt[p * n];
        double* vq = &vt[q * n];
        for (std::size_t r = 0; r < n; ++r) {
          const double vrp = vp[r];
          const double vrq = vq[r];
          vp[r] = vrp - s * (vrq + tau * vrp);
          vq[r] = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }

  // Sort eigenvalues ascending and permute columns to match.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a[x * n + x] < a[y * n + y];
  });

  EigenDecomposition dec;
  dec.n = n;
  dec.spectrum.values.resize(n);
  dec.vectors.assign(n * n, 0.0);
  for (std::size_t col = 0; col < n; ++col) {
    dec.spectrum.values[col] = a[order[col] * n + order[col]];
    for (std::size_t row = 0; row < n; ++row)
      dec.vectors[row * n + col] = vt[order[col] * n + row];
  }
  return dec;
}

}  // namespace eigenid
