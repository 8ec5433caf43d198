#pragma once

#include <atomic>
#include <cstddef>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "eigenid/eigensolve.hpp"
#include "eigenid/matrix.hpp"
#include "eigenid/thread_pool.hpp"

namespace eigenid {

enum class EvaluationMethod {
  kBaseline,
  kBatched,
  kBatchedParallel,
  kLogDomain,
};

std::string method_name(EvaluationMethod m);

// Numerator factors lambda_i(A) - lambda_k(M_j) and denominator factors
// lambda_i(A) - lambda_k(A) (k != i), matched index-wise. Both lists have
// exactly n-1 entries. When built through make_sorted_pairing the lists are
// sorted ascending, so interlacing keeps each matched ratio in [0, 1].
struct FactorPairing {
  std::vector<double> numerator;
  std::vector<double> denominator;

  std::size_t size() const { return numerator.size(); }
};

// Factors in natural (ascending eigenvalue index) order, as the sequential
// baseline consumes them.
FactorPairing make_natural_pairing(const Spectrum& spectrum_a,
                                   const Spectrum& spectrum_minor,
                                   std::size_t i);

// Both factor lists sorted ascending and matched index-wise.
FactorPairing make_sorted_pairing(const Spectrum& spectrum_a,
                                  const Spectrum& spectrum_minor,
                                  std::size_t i);

// Half-open [begin, end) slice into a FactorPairing.
struct BatchSlice {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
};

struct BatchPlan {
  std::vector<BatchSlice> batches;
  std::size_t batch_size = 0;

  std::size_t batch_count() const { return batches.size(); }
};

// Splits n-1 matched factor pairs into ceil((n-1)/batch_size) contiguous
// batches; the last batch may be short.
BatchPlan prepare_batches(const FactorPairing& factors, std::size_t batch_size);

struct MagnitudeResult {
  double value = 0.0;      // squared magnitude, clamped to [0, 1]
  double raw_value = 0.0;  // pre-clamp value, kept for diagnostics
  std::size_t i = 0;       // eigenvalue index (spectrum sorted ascending)
  std::size_t j = 0;       // component index
  EvaluationMethod method = EvaluationMethod::kBatched;
  // smallest |denominator factor| relative to the spectral range
  double condition_flag = 0.0;
};

// Overflow-proof evaluation of the factor ratio: exp(sum ln|num| - sum
// ln|den|). Throws InternalInconsistency if the reconstructed sign of the
// squared magnitude comes out negative.
double log_domain_product(const FactorPairing& factors);

struct IdentityConfig {
  std::size_t batch_size = 64;
  std::size_t workers = 0;  // 0 means logical core count
  double degeneracy_tol = 1e-12;  // relative to the spectral range
  enum class Evaluation { kPairedBatched, kLogDomain };
  Evaluation evaluation = Evaluation::kPairedBatched;

  std::size_t resolved_workers() const {
    if (workers >= 1) return workers;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
  }
};

// Evaluates squared eigenvector component magnitudes from eigenvalues of A
// and of its principal minors. The worker pool is created once per engine
// and reused across calls; the engine itself is safe for concurrent
// read-only use.
class IdentityEngine {
 public:
  explicit IdentityEngine(IdentityConfig cfg = {});

  const IdentityConfig& config() const { return cfg_; }

  // Sequential two-loop evaluation, factors consumed in natural order.
  // Throws NonFiniteIntermediate when a running product leaves the finite
  // range.
  MagnitudeResult component_magnitude_baseline(const SymmetricMatrix& a,
                                               std::size_t i,
                                               std::size_t j) const;

  // Batched evaluation over the sorted pairing; batches are dispatched to
  // the pool and their partial ratios combined in batch-index order, so the
  // result does not depend on the worker count. Falls back to log-domain
  // (and flags the result) if a partial product is non-finite. Cached
  // spectra, when supplied, must belong to A and minor(A, j).
  MagnitudeResult component_magnitude(
      const SymmetricMatrix& a, std::size_t i, std::size_t j,
      const Spectrum* cached_spectrum_a = nullptr,
      const Spectrum* cached_spectrum_minor = nullptr) const;

  // Log-domain evaluation from scratch (or from cached spectra).
  MagnitudeResult log_domain_magnitude(
      const SymmetricMatrix& a, std::size_t i, std::size_t j,
      const Spectrum* cached_spectrum_a = nullptr,
      const Spectrum* cached_spectrum_minor = nullptr) const;

  // All components of eigenvector i. Spectrum(A) is solved once; the n
  // minor solves are independent work items on the pool.
  std::vector<MagnitudeResult> vector_magnitudes(const SymmetricMatrix& a,
                                                 std::size_t i) const;

  // Row-major n x n array, entry [j*n + i] = |v_{i,j}|^2. Each minor
  // spectrum is solved exactly once and reused across all i.
  std::vector<double> all_magnitudes(const SymmetricMatrix& a) const;

  // Number of eigenvalue solves performed since construction or the last
  // reset. Instrumentation for the benchmark's operation-count checks.
  std::size_t eigenvalue_solve_count() const {
    return solves_.load(std::memory_order_relaxed);
  }
  void reset_solve_count() const {
    solves_.store(0, std::memory_order_relaxed);
  }

 private:
  Spectrum solve(const SymmetricMatrix& a) const;
  void check_nondegenerate(const Spectrum& s, std::size_t i) const;
  void check_fully_nondegenerate(const Spectrum& s) const;
  MagnitudeResult evaluate(const Spectrum& spectrum_a,
                           const Spectrum& spectrum_minor, std::size_t i,
                           std::size_t j, bool use_pool) const;

  IdentityConfig cfg_;
  mutable ThreadPool pool_;
  mutable std::atomic<std::size_t> solves_{0};
};

// Recovers component signs from squared magnitudes via the row equations of
// (A - lambda I) v = 0: the largest component is anchored and the remaining
// rows solved for the relative signs; the result is normalized so the first
// component above sign_tol is positive. Throws SignRecoveryFailure if the
// final residual exceeds 1e-6 * ||A||_F.
std::vector<double> recover_signs(const SymmetricMatrix& a, std::size_t i,
                                  const std::vector<double>& magnitudes,
                                  double lambda_i, double sign_tol = 1e-10);

}  // namespace eigenid
