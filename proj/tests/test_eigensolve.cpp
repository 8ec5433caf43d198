#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "doctest.h"
#include "eigenid/eigensolve.hpp"
#include "eigenid/matrix.hpp"
#include "eigenid/matrix_io.hpp"

using namespace eigenid;

TEST_CASE("tridiagonalize leaves diagonal and 2x2 input unchanged") {
  auto d = SymmetricMatrix::diagonal({1, 2, 3});
  auto t = tridiagonalize(d);
  CHECK(t.diag == std::vector<double>{1, 2, 3});
  CHECK(t.offdiag == std::vector<double>{0, 0});

  auto a = SymmetricMatrix::build(2, {2, 1, 1, 2});
  auto t2 = tridiagonalize(a);
  CHECK(t2.diag == std::vector<double>{2, 2});
  CHECK(t2.offdiag == std::vector<double>{1});
}

TEST_CASE("tridiagonal form preserves the spectrum") {
  auto a = random_symmetric(3, 8);
  auto reduced = eigenvalues(tridiagonalize(a));
  auto oracle = jacobi_eigendecomposition(a).spectrum;
  REQUIRE(reduced.n() == 8);
  for (std::size_t i = 0; i < 8; ++i)
    CHECK(std::abs(reduced[i] - oracle[i]) <= 1e-10);
}

TEST_CASE("QL eigenvalues on hand-solvable input") {
  auto a = SymmetricMatrix::build(2, {2, 1, 1, 2});
  auto s = eigenvalues(a);
  CHECK(s[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s[1] == doctest::Approx(3.0).epsilon(1e-12));

  auto s5 = eigenvalues(SymmetricMatrix::identity(5));
  for (std::size_t i = 0; i < 5; ++i)
    CHECK(s5[i] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("QL matches the Jacobi oracle on a random 10x10") {
  auto a = random_symmetric(11, 10);
  auto ql = eigenvalues(a);
  auto jac = jacobi_eigendecomposition(a).spectrum;
  for (std::size_t i = 0; i < 10; ++i)
    CHECK(std::abs(ql[i] - jac[i]) <= 1e-10);
}

TEST_CASE("Jacobi on diagonal input is a column permutation") {
  auto dec = jacobi_eigendecomposition(SymmetricMatrix::diagonal({4, 1}));
  CHECK(dec.spectrum[0] == doctest::Approx(1.0));
  CHECK(dec.spectrum[1] == doctest::Approx(4.0));
  CHECK(std::abs(dec.vector_entry(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(dec.vector_entry(0, 1)) == doctest::Approx(1.0));
  CHECK(dec.vector_entry(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("Jacobi hand case eigenvectors") {
  auto dec = jacobi_eigendecomposition(SymmetricMatrix::build(2, {2, 1, 1, 2}));
  CHECK(dec.spectrum[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dec.spectrum[1] == doctest::Approx(3.0).epsilon(1e-12));
  const double s = 1.0 / std::sqrt(2.0);
  // column 0 is +-(1,-1)/sqrt(2), column 1 is +-(1,1)/sqrt(2)
  CHECK(std::abs(dec.vector_entry(0, 0)) == doctest::Approx(s));
  CHECK(std::abs(dec.vector_entry(1, 0)) == doctest::Approx(s));
  CHECK(dec.vector_entry(0, 0) * dec.vector_entry(1, 0) < 0);
  CHECK(dec.vector_entry(0, 1) * dec.vector_entry(1, 1) > 0);
}

TEST_CASE("Jacobi residuals on a random 20x20") {
  auto a = random_symmetric(5, 20);
  auto dec = jacobi_eigendecomposition(a);
  for (std::size_t i = 0; i < 20; ++i) {
    double res = 0.0;
    for (std::size_t r = 0; r < 20; ++r) {
      double av = 0.0;
      for (std::size_t c = 0; c < 20; ++c)
        av += a(r, c) * dec.vector_entry(c, i);
      const double d = av - dec.spectrum[i] * dec.vector_entry(r, i);
      res += d * d;
    }
    CHECK(std::sqrt(res) <= 1e-10);
  }
}

TEST_CASE("trace preservation for both solvers") {
  for (std::uint64_t seed : {1, 2, 3}) {
    for (std::size_t n : {5, 16, 33}) {
      auto a = random_symmetric(seed, n);
      const double tol = static_cast<double>(n) *
                         std::numeric_limits<double>::epsilon() *
                         a.frobenius_norm();
      CHECK(std::abs(eigenvalues(a).sum() - a.trace()) <= tol);
      CHECK(std::abs(jacobi_eigendecomposition(a).spectrum.sum() -
                     a.trace()) <= tol);
    }
  }
}

TEST_CASE("QL and Jacobi spectra agree up to n = 64") {
  for (std::size_t n : {2, 7, 16, 31, 48, 64}) {
    auto a = random_symmetric(100 + n, n);
    auto ql = eigenvalues(a);
    auto jac = jacobi_eigendecomposition(a).spectrum;
    const double tol = 1e-9 * std::max(1.0, a.frobenius_norm());
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(ql[i] - jac[i]) <= tol);
  }
}

TEST_CASE("Cauchy interlacing holds for every minor") {
  for (std::uint64_t seed : {0, 9, 21}) {
    auto a = random_symmetric(seed, 12);
    auto full = eigenvalues(a);
    const double tol = 1e-9 * a.frobenius_norm();
    for (std::size_t j = 0; j < 12; ++j) {
      auto minor = eigenvalues(a.minor_matrix(j));
      for (std::size_t k = 0; k + 1 < 12; ++k) {
        CHECK(minor[k] >= full[k] - tol);
        CHECK(minor[k] <= full[k + 1] + tol);
      }
    }
  }
}

TEST_CASE("oracle eigenvectors are orthonormal") {
  auto a = random_symmetric(8, 24);
  auto dec = jacobi_eigendecomposition(a);
  for (std::size_t i = 0; i < 24; ++i)
    for (std::size_t k = 0; k < 24; ++k) {
      double dot = 0.0;
      for (std::size_t r = 0; r < 24; ++r)
        dot += dec.vector_entry(r, i) * dec.vector_entry(r, k);
      CHECK(std::abs(dot - (i == k ? 1.0 : 0.0)) <= 1e-10);
    }
}

TEST_CASE("spectra are sorted ascending") {
  auto a = random_symmetric(13, 17);
  auto s = eigenvalues(a);
  for (std::size_t i = 0; i + 1 < s.n(); ++i) CHECK(s[i] <= s[i + 1]);
  auto j = jacobi_eigendecomposition(a).spectrum;
  for (std::size_t i = 0; i + 1 < j.n(); ++i) CHECK(j[i] <= j[i + 1]);
}
