#include "eigenid/identity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "eigenid/errors.hpp"

namespace eigenid {

std::string method_name(EvaluationMethod m) {
  switch (m) {
    case EvaluationMethod::kBaseline:
      return "baseline";
    case EvaluationMethod::kBatched:
      return "batched";
    case EvaluationMethod::kBatchedParallel:
      return "batched-parallel";
    case EvaluationMethod::kLogDomain:
      return "log-domain";
  }
  return "?";
}

namespace {

void check_component_indices(const SymmetricMatrix& a, std::size_t i,
                             std::size_t j) {
  if (a.n() < 2)
    throw MatrixTooSmall("component magnitudes need n >= 2");
  if (i >= a.n() || j >= a.n())
    throw IndexOutOfRange("component index (i=" + std::to_string(i) +
                          ", j=" + std::to_string(j) +
                          ") out of range for n = " + std::to_string(a.n()));
}

// Smallest gap between lambda_i and the rest of the spectrum. Throws when
// the gap vanishes relative to the spectral range: the identity's
// denominator is then (numerically) zero and the component not uniquely
// determined.
double checked_min_gap(const Spectrum& s, std::size_t i, double tol) {
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < s.n(); ++k) {
    if (k == i) continue;
    min_gap = std::min(min_gap, std::abs(s[i] - s[k]));
  }
  if (min_gap <= tol * s.range())
    throw DegenerateEigenvalue(
        "eigenvalue " + std::to_string(i) + " is degenerate (gap " +
            std::to_string(min_gap) + ", spectral range " +
            std::to_string(s.range()) + ")",
        min_gap);
  return min_gap;
}

}  // namespace

FactorPairing make_natural_pairing(const Spectrum& spectrum_a,
                                   const Spectrum& spectrum_minor,
                                   std::size_t i) {
  const std::size_t n = spectrum_a.n();
  FactorPairing f;
  f.numerator.reserve(n - 1);
  f.denominator.reserve(n - 1);
  const double lambda = spectrum_a[i];
  for (std::size_t k = 0; k + 1 < n; ++k)
    f.numerator.push_back(lambda - spectrum_minor[k]);
  for (std::size_t k = 0; k < n; ++k)
    if (k != i) f.denominator.push_back(lambda - spectrum_a[k]);
  return f;
}

FactorPairing make_sorted_pairing(const Spectrum& spectrum_a,
                                  const Spectrum& spectrum_minor,
                                  std::size_t i) {
  FactorPairing f = make_natural_pairing(spectrum_a, spectrum_minor, i);
  // Interlacing puts the k-th smallest minor factor next to the k-th
  // smallest matrix factor, bounding every matched ratio by 1.
  std::sort(f.numerator.begin(), f.numerator.end());
  std::sort(f.denominator.begin(), f.denominator.end());
  return f;
}

BatchPlan prepare_batches(const FactorPairing& factors,
                          std::size_t batch_size) {
  if (batch_size < 1)
    throw ConfigError("batch size must be >= 1");
  BatchPlan plan;
  plan.batch_size = batch_size;
  const std::size_t total = factors.size();
  plan.batches.reserve((total + batch_size - 1) / batch_size);
  for (std::size_t b = 0; b < total; b += batch_size)
    plan.batches.push_back({b, std::min(b + batch_size, total)});
  return plan;
}

double log_domain_product(const FactorPairing& factors) {
  double log_sum = 0.0;
  bool negative = false;
  bool zero = false;
  for (double x : factors.numerator) {
    if (x == 0.0) {
      zero = true;
    } else {
      log_sum += std::log(std::abs(x));
      if (x < 0.0) negative = !negative;
    }
  }
  for (double x : factors.denominator) {
    if (x == 0.0)
      throw DegenerateEigenvalue("zero denominator factor", 0.0);
    log_sum -= std::log(std::abs(x));
    if (x < 0.0) negative = !negative;
  }
  if (zero) return 0.0;
  if (negative)
    throw InternalInconsistency(
        "reconstructed squared magnitude is negative; eigenvalue ordering "
        "is inconsistent");
  return std::exp(log_sum);
}

IdentityEngine::IdentityEngine(IdentityConfig cfg)
    : cfg_(cfg), pool_(cfg.resolved_workers()) {
  if (cfg_.batch_size < 1) throw ConfigError("batch size must be >= 1");
  if (cfg_.degeneracy_tol < 0.0)
    throw ConfigError("degeneracy tolerance must be >= 0");
}

Spectrum IdentityEngine::solve(const SymmetricMatrix& a) const {
  solves_.fetch_add(1, std::memory_order_relaxed);
  return eigenvalues(a);
}

void IdentityEngine::check_nondegenerate(const Spectrum& s,
                                         std::size_t i) const {
  checked_min_gap(s, i, cfg_.degeneracy_tol);
}

void IdentityEngine::check_fully_nondegenerate(const Spectrum& s) const {
  // Sorted spectrum: adjacent gaps cover all pairs.
  for (std::size_t k = 0; k + 1 < s.n(); ++k)
    if (s[k + 1] - s[k] <= cfg_.degeneracy_tol * s.range())
      throw DegenerateEigenvalue(
          "spectrum is degenerate between eigenvalues " + std::to_string(k) +
              " and " + std::to_string(k + 1),
          s[k + 1] - s[k]);
}

MagnitudeResult IdentityEngine::component_magnitude_baseline(
    const SymmetricMatrix& a, std::size_t i, std::size_t j) const {
  check_component_indices(a, i, j);
  const Spectrum spectrum_a = solve(a);
  const Spectrum spectrum_minor = solve(a.minor_matrix(j));
  const double min_gap = checked_min_gap(spectrum_a, i, cfg_.degeneracy_tol);

  const FactorPairing f = make_natural_pairing(spectrum_a, spectrum_minor, i);
  double numerator = 1.0;
  for (double x : f.numerator) {
    numerator *= x;
    if (!std::isfinite(numerator))
      throw NonFiniteIntermediate("numerator product left the finite range");
  }
  double denominator = 1.0;
  for (double x : f.denominator) {
    denominator *= x;
    if (!std::isfinite(denominator))
      throw NonFiniteIntermediate("denominator product left the finite range");
  }
  const double raw = numerator / denominator;
  if (!std::isfinite(raw))
    throw NonFiniteIntermediate("factor ratio is not finite");

  MagnitudeResult r;
  r.raw_value = raw;
  r.value = std::clamp(raw, 0.0, 1.0);
  r.i = i;
  r.j = j;
  r.method = EvaluationMethod::kBaseline;
  r.condition_flag = min_gap / spectrum_a.range();
  return r;
}

MagnitudeResult IdentityEngine::evaluate(const Spectrum& spectrum_a,
                                         const Spectrum& spectrum_minor,
                                         std::size_t i, std::size_t j,
                                         bool use_pool) const {
  const double min_gap = checked_min_gap(spectrum_a, i, cfg_.degeneracy_tol);
  const FactorPairing f = make_sorted_pairing(spectrum_a, spectrum_minor, i);

  MagnitudeResult r;
  r.i = i;
  r.j = j;
  r.condition_flag = min_gap / spectrum_a.range();

  if (cfg_.evaluation == IdentityConfig::Evaluation::kLogDomain) {
    r.raw_value = log_domain_product(f);
    r.value = std::clamp(r.raw_value, 0.0, 1.0);
    r.method = EvaluationMethod::kLogDomain;
    return r;
  }

  const BatchPlan plan = prepare_batches(f, cfg_.batch_size);
  std::vector<double> ratios(plan.batch_count());
  const auto batch_ratio = [&](std::size_t b) {
    double num = 1.0, den = 1.0;
    for (std::size_t k = plan.batches[b].begin; k < plan.batches[b].end; ++k) {
      num *= f.numerator[k];
      den *= f.denominator[k];
    }
    ratios[b] = num / den;
  };

  const bool parallel =
      use_pool && pool_.worker_count() > 1 && plan.batch_count() > 1;
  if (parallel)
    pool_.parallel_for(plan.batch_count(), batch_ratio);
  else
    for (std::size_t b = 0; b < plan.batch_count(); ++b) batch_ratio(b);

  // Combine in batch-index order: the result is independent of which worker
  // computed which batch.
  double raw = 1.0;
  for (double x : ratios) raw *= x;

  if (!std::isfinite(raw)) {
    // One retry in log-domain, flagged through the method field.
    r.raw_value = log_domain_product(f);
    r.method = EvaluationMethod::kLogDomain;
  } else {
    r.raw_value = raw;
    r.method = parallel ? EvaluationMethod::kBatchedParallel
                        : EvaluationMethod::kBatched;
  }
  r.value = std::clamp(r.raw_value, 0.0, 1.0);
  return r;
}

MagnitudeResult IdentityEngine::component_magnitude(
    const SymmetricMatrix& a, std::size_t i, std::size_t j,
    const Spectrum* cached_spectrum_a,
    const Spectrum* cached_spectrum_minor) const {
  check_component_indices(a, i, j);
  const Spectrum spectrum_a =
      cached_spectrum_a ? *cached_spectrum_a : solve(a);
  const Spectrum spectrum_minor = cached_spectrum_minor
                                      ? *cached_spectrum_minor
                                      : solve(a.minor_matrix(j));
  return evaluate(spectrum_a, spectrum_minor, i, j, /*use_pool=*/true);
}

MagnitudeResult IdentityEngine::log_domain_magnitude(
    const SymmetricMatrix& a, std::size_t i, std::size_t j,
    const Spectrum* cached_spectrum_a,
    const Spectrum* cached_spectrum_minor) const {
  check_component_indices(a, i, j);
  const Spectrum spectrum_a =
      cached_spectrum_a ? *cached_spectrum_a : solve(a);
  const Spectrum spectrum_minor = cached_spectrum_minor
                                      ? *cached_spectrum_minor
                                      : solve(a.minor_matrix(j));
  const double min_gap = checked_min_gap(spectrum_a, i, cfg_.degeneracy_tol);
  const FactorPairing f = make_sorted_pairing(spectrum_a, spectrum_minor, i);

  MagnitudeResult r;
  r.raw_value = log_domain_product(f);
  r.value = std::clamp(r.raw_value, 0.0, 1.0);
  r.i = i;
  r.j = j;
  r.method = EvaluationMethod::kLogDomain;
  r.condition_flag = min_gap / spectrum_a.range();
  return r;
}

std::vector<MagnitudeResult> IdentityEngine::vector_magnitudes(
    const SymmetricMatrix& a, std::size_t i) const {
  check_component_indices(a, i, 0);
  const Spectrum spectrum_a = solve(a);
  check_nondegenerate(spectrum_a, i);

  const std::size_t n = a.n();
  std::vector<MagnitudeResult> results(n);
  // Minor solves are the independent work items; the per-component product
  // itself stays sequential inside each item.
  pool_.parallel_for(n, [&](std::size_t j) {
    const Spectrum spectrum_minor = solve(a.minor_matrix(j));
    results[j] = evaluate(spectrum_a, spectrum_minor, i, j,
                          /*use_pool=*/false);
  });
  return results;
}

std::vector<double> IdentityEngine::all_magnitudes(
    const SymmetricMatrix& a) const {
  if (a.n() < 2)
    throw MatrixTooSmall("component magnitudes need n >= 2");
  const std::size_t n = a.n();
  const Spectrum spectrum_a = solve(a);
  check_fully_nondegenerate(spectrum_a);

  // Each minor spectrum is solved exactly once and reused for every i.
  std::vector<Spectrum> minor_spectra(n);
  pool_.parallel_for(n, [&](std::size_t j) {
    minor_spectra[j] = solve(a.minor_matrix(j));
  });

  std::vector<double> out(n * n);
  pool_.parallel_for(n, [&](std::size_t j) {
    for (std::size_t i = 0; i < n; ++i)
      out[j * n + i] =
          evaluate(spectrum_a, minor_spectra[j], i, j, /*use_pool=*/false)
              .value;
  });
  return out;
}

}  // namespace eigenid
