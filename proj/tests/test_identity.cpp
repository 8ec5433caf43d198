#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <vector>

#include "doctest.h"
#include "eigenid/errors.hpp"
#include "eigenid/identity.hpp"
#include "eigenid/matrix_io.hpp"

using namespace eigenid;

namespace {

IdentityEngine make_engine(std::size_t batch_size = 64,
                           std::size_t workers = 1) {
  IdentityConfig cfg;
  cfg.batch_size = batch_size;
  cfg.workers = workers;
  return IdentityEngine(cfg);
}

bool bit_equal(double a, double b) {
  return std::memcmp(&a, &b, sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("baseline hand case") {
  auto a = SymmetricMatrix::build(2, {2, 1, 1, 2});
  auto engine = make_engine();
  auto r = engine.component_magnitude_baseline(a, 0, 0);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.method == EvaluationMethod::kBaseline);
}

TEST_CASE("baseline on diagonal matrices gives standard-basis components") {
  auto a = SymmetricMatrix::diagonal({1, 2, 3});
  auto engine = make_engine();
  CHECK(engine.component_magnitude_baseline(a, 1, 1).value ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(engine.component_magnitude_baseline(a, 1, 0).value ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("baseline matches the Jacobi oracle on a random 8x8") {
  auto a = random_symmetric(13, 8);
  auto dec = jacobi_eigendecomposition(a);
  auto engine = make_engine();
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      const double oracle =
          dec.vector_entry(j, i) * dec.vector_entry(j, i);
      CHECK(std::abs(engine.component_magnitude_baseline(a, i, j).value -
                     oracle) <= 1e-9);
    }
}

TEST_CASE("prepare_batches ceiling arithmetic") {
  FactorPairing f;
  f.numerator.assign(5, 1.0);
  f.denominator.assign(5, 1.0);
  auto plan = prepare_batches(f, 2);
  REQUIRE(plan.batch_count() == 3);
  CHECK(plan.batches[0].size() == 2);
  CHECK(plan.batches[1].size() == 2);
  CHECK(plan.batches[2].size() == 1);

  auto single = prepare_batches(f, 8);
  REQUIRE(single.batch_count() == 1);
  CHECK(single.batches[0].size() == 5);
}

TEST_CASE("concatenated batches cover each factor pair exactly once") {
  auto a = random_symmetric(77, 129);
  auto sa = eigenvalues(a);
  auto sm = eigenvalues(a.minor_matrix(0));
  auto f = make_sorted_pairing(sa, sm, 64);
  REQUIRE(f.size() == 128);
  auto plan = prepare_batches(f, 64);
  REQUIRE(plan.batch_count() == 2);

  std::vector<std::pair<double, double>> covered;
  for (const auto& b : plan.batches)
    for (std::size_t k = b.begin; k < b.end; ++k)
      covered.emplace_back(f.numerator[k], f.denominator[k]);
  std::vector<std::pair<double, double>> expected;
  for (std::size_t k = 0; k < f.size(); ++k)
    expected.emplace_back(f.numerator[k], f.denominator[k]);
  std::sort(covered.begin(), covered.end());
  std::sort(expected.begin(), expected.end());
  CHECK(covered == expected);
}

TEST_CASE("batched hand case with batch size 1") {
  auto a = SymmetricMatrix::build(2, {2, 1, 1, 2});
  auto engine = make_engine(1);
  auto r = engine.component_magnitude(a, 0, 0);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("batch size does not change the value") {
  auto a = random_symmetric(9, 50);
  std::vector<double> values;
  for (std::size_t bs : {1, 8, 64}) {
    auto engine = make_engine(bs);
    values.push_back(engine.component_magnitude(a, 25, 7).value);
  }
  for (double v : values) {
    const double rel =
        std::abs(v - values[0]) / std::max(1e-300, std::abs(values[0]));
    CHECK(rel <= 1e-13);
  }
}

TEST_CASE("batched agrees with baseline and the oracle") {
  auto a = random_symmetric(9, 50);
  auto dec = jacobi_eigendecomposition(a);
  auto engine = make_engine(8);
  const double oracle = dec.vector_entry(7, 25) * dec.vector_entry(7, 25);
  const double batched = engine.component_magnitude(a, 25, 7).value;
  const double base = engine.component_magnitude_baseline(a, 25, 7).value;
  CHECK(std::abs(batched - oracle) <= 1e-9);
  CHECK(std::abs(batched - base) <=
        1e-10 * std::max(1e-300, std::abs(base)));
}

TEST_CASE("results are bit-identical across worker counts") {
  auto a = random_symmetric(31, 40);
  auto e1 = make_engine(4, 1);
  auto e2 = make_engine(4, 2);
  auto e8 = make_engine(4, 8);
  for (std::size_t i : {0, 11, 39})
    for (std::size_t j : {3, 20}) {
      const double v1 = e1.component_magnitude(a, i, j).value;
      const double v2 = e2.component_magnitude(a, i, j).value;
      const double v8 = e8.component_magnitude(a, i, j).value;
      CHECK(bit_equal(v1, v2));
      CHECK(bit_equal(v1, v8));
    }
}

TEST_CASE("cached spectra skip redundant eigenvalue solves") {
  auto a = random_symmetric(3, 12);
  auto engine = make_engine();
  auto sa = eigenvalues(a);
  auto sm = eigenvalues(a.minor_matrix(4));
  engine.reset_solve_count();
  auto cached = engine.component_magnitude(a, 5, 4, &sa, &sm);
  CHECK(engine.eigenvalue_solve_count() == 0);
  auto uncached = engine.component_magnitude(a, 5, 4);
  CHECK(engine.eigenvalue_solve_count() == 2);
  CHECK(bit_equal(cached.value, uncached.value));
}

TEST_CASE("log-domain single pair and standard basis") {
  FactorPairing f;
  f.numerator = {-1.0};
  f.denominator = {-2.0};
  CHECK(log_domain_product(f) == doctest::Approx(0.5).epsilon(1e-14));

  auto a = SymmetricMatrix::diagonal({1, 2, 3});
  auto engine = make_engine();
  CHECK(engine.log_domain_magnitude(a, 0, 0).value ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("log-domain flags a negative reconstructed square") {
  FactorPairing f;
  f.numerator = {-1.0};
  f.denominator = {2.0};
  CHECK_THROWS_AS(log_domain_product(f), InternalInconsistency);
}

TEST_CASE("log-domain agrees with batched on a random 40x40") {
  auto a = random_symmetric(21, 40);
  auto engine = make_engine();
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t j = 0; j < 40; ++j) {
      const double b = engine.component_magnitude(a, i, j).value;
      const double l = engine.log_domain_magnitude(a, i, j).value;
      CHECK(std::abs(b - l) <= 1e-10 * std::max(1e-12, std::abs(b)));
    }
}

TEST_CASE("vector magnitudes: standard basis and hand case") {
  auto engine = make_engine();
  auto d = SymmetricMatrix::diagonal({5, 6, 7});
  auto rd = engine.vector_magnitudes(d, 2);
  CHECK(rd[0].value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rd[1].value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rd[2].value == doctest::Approx(1.0).epsilon(1e-12));

  auto a = SymmetricMatrix::build(2, {2, 1, 1, 2});
  auto rv = engine.vector_magnitudes(a, 1);
  CHECK(rv[0].value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rv[1].value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("vector magnitudes match the oracle column and sum to one") {
  auto a = random_symmetric(2, 30);
  auto engine = make_engine(64, 4);
  auto dec = jacobi_eigendecomposition(a);
  auto rv = engine.vector_magnitudes(a, 0);
  double sum = 0.0;
  for (std::size_t j = 0; j < 30; ++j) {
    const double oracle = dec.vector_entry(j, 0) * dec.vector_entry(j, 0);
    CHECK(std::abs(rv[j].value - oracle) <= 1e-9);
    sum += rv[j].value;
  }
  CHECK(std::abs(sum - 1.0) <= 1e-10);
}

TEST_CASE("all magnitudes: hand cases") {
  auto engine = make_engine();
  auto d = SymmetricMatrix::diagonal({1, 2, 3});
  auto md = engine.all_magnitudes(d);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(md[j * 3 + i] ==
            doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));

  auto a = SymmetricMatrix::build(2, {2, 1, 1, 2});
  auto ma = engine.all_magnitudes(a);
  for (double v : ma) CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("all magnitudes match the oracle and are doubly stochastic") {
  auto a = random_symmetric(4, 25);
  auto engine = make_engine(64, 4);
  auto dec = jacobi_eigendecomposition(a);
  auto m = engine.all_magnitudes(a);
  for (std::size_t j = 0; j < 25; ++j)
    for (std::size_t i = 0; i < 25; ++i) {
      const double oracle = dec.vector_entry(j, i) * dec.vector_entry(j, i);
      CHECK(std::abs(m[j * 25 + i] - oracle) <= 1e-9);
    }
  for (std::size_t j = 0; j < 25; ++j) {
    double row = 0.0, col = 0.0;
    for (std::size_t i = 0; i < 25; ++i) {
      row += m[j * 25 + i];
      col += m[i * 25 + j];
    }
    CHECK(std::abs(row - 1.0) <= 1e-8);
    CHECK(std::abs(col - 1.0) <= 1e-8);
  }
}

TEST_CASE("exact minor solves count: n+1 for vector and all tasks") {
  auto a = random_symmetric(6, 14);
  auto engine = make_engine(64, 4);
  engine.reset_solve_count();
  engine.vector_magnitudes(a, 3);
  CHECK(engine.eigenvalue_solve_count() == 15);
  engine.reset_solve_count();
  engine.all_magnitudes(a);
  CHECK(engine.eigenvalue_solve_count() == 15);
}

TEST_CASE("degenerate spectrum raises a typed error from every variant") {
  auto id5 = SymmetricMatrix::identity(5);
  auto engine = make_engine();
  CHECK_THROWS_AS(engine.component_magnitude_baseline(id5, 0, 0),
                  DegenerateEigenvalue);
  CHECK_THROWS_AS(engine.component_magnitude(id5, 0, 0),
                  DegenerateEigenvalue);
  CHECK_THROWS_AS(engine.log_domain_magnitude(id5, 0, 0),
                  DegenerateEigenvalue);
  CHECK_THROWS_AS(engine.vector_magnitudes(id5, 0), DegenerateEigenvalue);
  CHECK_THROWS_AS(engine.all_magnitudes(id5), DegenerateEigenvalue);
}

TEST_CASE("interlacing coincidence yields a genuine zero component") {
  // Block-diagonal: eigenvalues of the 2x2 block survive in the minor that
  // removes the decoupled third coordinate, so lambda_i(A) = lambda_k(M_2).
  auto a = SymmetricMatrix::build(3, {2, 1, 0, 1, 2, 0, 0, 0, 10});
  auto engine = make_engine();
  CHECK(engine.component_magnitude(a, 0, 2).value <= 1e-8);
  CHECK(engine.component_magnitude(a, 2, 0).value <= 1e-8);
}

TEST_CASE("overflow: baseline fails, batched recovers, log-domain agrees") {
  auto a = random_symmetric(1, 300).scaled(1e3);
  auto engine = make_engine(64, 4);
  const std::size_t i = 150, j = 7;
  CHECK_THROWS_AS(engine.component_magnitude_baseline(a, i, j),
                  NonFiniteIntermediate);
  auto batched = engine.component_magnitude(a, i, j);
  CHECK(std::isfinite(batched.raw_value));
  auto log_ref = engine.log_domain_magnitude(a, i, j);
  const double rel = std::abs(batched.value - log_ref.value) /
                     std::max(1e-300, std::abs(log_ref.value));
  CHECK(rel <= 1e-10);
}

TEST_CASE("reported values stay in range after clamping") {
  auto a = random_symmetric(14, 32);
  auto engine = make_engine();
  auto m = engine.all_magnitudes(a);
  for (double v : m) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  for (std::size_t j = 0; j < 32; ++j) {
    auto r = engine.component_magnitude(a, 16, j);
    CHECK(r.raw_value >= -1e-9);
    CHECK(r.raw_value <= 1.0 + 1e-9);
  }
}

TEST_CASE("sign recovery hand cases") {
  auto a = SymmetricMatrix::build(2, {2, 1, 1, 2});
  auto v = recover_signs(a, 0, {0.5, 0.5}, 1.0);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(v[0] == doctest::Approx(s).epsilon(1e-12));
  CHECK(v[1] == doctest::Approx(-s).epsilon(1e-12));

  auto d = SymmetricMatrix::diagonal({1, 2});
  auto vd = recover_signs(d, 1, {0.0, 1.0}, 2.0);
  CHECK(vd[0] == doctest::Approx(0.0));
  CHECK(vd[1] == doctest::Approx(1.0));
}

TEST_CASE("sign recovery matches oracle columns up to global sign") {
  auto a = random_symmetric(8, 15);
  auto engine = make_engine();
  auto dec = jacobi_eigendecomposition(a);
  for (std::size_t i = 0; i < 15; ++i) {
    auto rv = engine.vector_magnitudes(a, i);
    std::vector<double> mags(15);
    for (std::size_t j = 0; j < 15; ++j) mags[j] = rv[j].value;
    auto v = recover_signs(a, i, mags, dec.spectrum[i]);

    // normalize the oracle column to first-significant-positive
    std::vector<double> oracle(15);
    for (std::size_t j = 0; j < 15; ++j) oracle[j] = dec.vector_entry(j, i);
    for (std::size_t j = 0; j < 15; ++j)
      if (oracle[j] * oracle[j] > 1e-10) {
        if (oracle[j] < 0)
          for (double& x : oracle) x = -x;
        break;
      }
    for (std::size_t j = 0; j < 15; ++j)
      CHECK(std::abs(v[j] - oracle[j]) <= 1e-6);
  }
}

TEST_CASE("sign recovery rejects inconsistent magnitudes") {
  auto a = random_symmetric(8, 10);
  std::vector<double> junk(10, 0.1);
  CHECK_THROWS_AS(recover_signs(a, 0, junk, 123.0), SignRecoveryFailure);
}
