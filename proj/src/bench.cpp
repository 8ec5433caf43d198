#include "eigenid/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <sstream>
#include <string>

#include "eigenid/errors.hpp"

namespace eigenid {

std::string variant_name(BenchVariant v) {
  switch (v) {
    case BenchVariant::kBaseline:
      return "baseline";
    case BenchVariant::kVectorizedBatched:
      return "vectorized-batched";
    case BenchVariant::kBatchedParallel:
      return "batched-parallel";
    case BenchVariant::kLogDomain:
      return "log-domain";
    case BenchVariant::kOracleFull:
      return "oracle-full";
  }
  return "?";
}

std::string task_name(BenchTask t) {
  switch (t) {
    case BenchTask::kSingleComponent:
      return "single-component";
    case BenchTask::kSingleVector:
      return "single-vector";
    case BenchTask::kAllVectors:
      return "all-vectors";
  }
  return "?";
}

BenchVariant parse_variant(const std::string& name) {
  for (BenchVariant v :
       {BenchVariant::kBaseline, BenchVariant::kVectorizedBatched,
        BenchVariant::kBatchedParallel, BenchVariant::kLogDomain,
        BenchVariant::kOracleFull})
    if (variant_name(v) == name) return v;
  throw ConfigError("unknown variant '" + name + "'");
}

BenchTask parse_task(const std::string& name) {
  for (BenchTask t : {BenchTask::kSingleComponent, BenchTask::kSingleVector,
                      BenchTask::kAllVectors})
    if (task_name(t) == name) return t;
  throw ConfigError("unknown task '" + name + "'");
}

const BenchSummary* BenchReport::find_summary(std::size_t n,
                                              BenchVariant v) const {
  for (const auto& s : summaries)
    if (s.n == n && s.variant == v) return &s;
  return nullptr;
}

double BenchReport::speedup(std::size_t n, BenchVariant v) const {
  const BenchSummary* oracle = find_summary(n, BenchVariant::kOracleFull);
  const BenchSummary* variant = find_summary(n, v);
  if (!oracle || !variant)
    throw MissingReference("no oracle-full reference mean for n = " +
                           std::to_string(n));
  return oracle->mean_seconds / variant->mean_seconds;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double sum_squared_column(const EigenDecomposition& dec, std::size_t i) {
  double s = 0.0;
  for (std::size_t j = 0; j < dec.n; ++j) {
    const double v = dec.vector_entry(j, i);
    s += v * v;
  }
  return s;
}

// Executes one repetition of (variant, task) and returns the checksum:
// the magnitude for single-component, the magnitude-sum otherwise.
double run_task(BenchVariant variant, BenchTask task,
                const SymmetricMatrix& a, const IdentityEngine& engine) {
  const std::size_t n = a.n();
  const std::size_t i = n / 2;
  const std::size_t j = n / 3;

  if (variant == BenchVariant::kOracleFull) {
    const EigenDecomposition dec = jacobi_eigendecomposition(a);
    switch (task) {
      case BenchTask::kSingleComponent: {
        const double v = dec.vector_entry(j, i);
        return v * v;
      }
      case BenchTask::kSingleVector:
        return sum_squared_column(dec, i);
      case BenchTask::kAllVectors: {
        double s = 0.0;
        for (std::size_t col = 0; col < n; ++col)
          s += sum_squared_column(dec, col);
        return s;
      }
    }
  }

  if (variant == BenchVariant::kBaseline) {
    switch (task) {
      case BenchTask::kSingleComponent:
        return engine.component_magnitude_baseline(a, i, j).value;
      case BenchTask::kSingleVector: {
        double s = 0.0;
        for (std::size_t jj = 0; jj < n; ++jj)
          s += engine.component_magnitude_baseline(a, i, jj).value;
        return s;
      }
      case BenchTask::kAllVectors: {
        double s = 0.0;
        for (std::size_t ii = 0; ii < n; ++ii)
          for (std::size_t jj = 0; jj < n; ++jj)
            s += engine.component_magnitude_baseline(a, ii, jj).value;
        return s;
      }
    }
  }

  switch (task) {
    case BenchTask::kSingleComponent:
      return variant == BenchVariant::kLogDomain
                 ? engine.log_domain_magnitude(a, i, j).value
                 : engine.component_magnitude(a, i, j).value;
    case BenchTask::kSingleVector: {
      double s = 0.0;
      for (const auto& r : engine.vector_magnitudes(a, i)) s += r.value;
      return s;
    }
    case BenchTask::kAllVectors: {
      double s = 0.0;
      for (double v : engine.all_magnitudes(a)) s += v;
      return s;
    }
  }
  throw ConfigError("unreachable variant/task combination");
}

bool is_identity_cached_variant(BenchVariant v) {
  return v == BenchVariant::kVectorizedBatched ||
         v == BenchVariant::kBatchedParallel ||
         v == BenchVariant::kLogDomain;
}

// D6 caching contract: single-component touches exactly two spectra,
// vector/all tasks touch n+1.
void check_solve_count(BenchVariant variant, BenchTask task, std::size_t n,
                       std::size_t solves) {
  const std::size_t expected =
      task == BenchTask::kSingleComponent ? 2 : n + 1;
  if (solves != expected)
    throw InternalInconsistency(
        "eigenvalue solve count for " + variant_name(variant) + "/" +
        task_name(task) + " at n = " + std::to_string(n) + " is " +
        std::to_string(solves) + ", expected " + std::to_string(expected));
}

IdentityConfig engine_config(const BenchConfig& cfg, BenchVariant variant) {
  IdentityConfig ec;
  ec.batch_size = cfg.batch_size;
  ec.workers =
      variant == BenchVariant::kBatchedParallel ? cfg.workers : 1;
  if (variant == BenchVariant::kLogDomain)
    ec.evaluation = IdentityConfig::Evaluation::kLogDomain;
  return ec;
}

}  // namespace

BenchReport run_benchmark(const BenchConfig& cfg) {
  if (cfg.sizes.empty()) throw ConfigError("size list is empty");
  for (std::size_t n : cfg.sizes)
    if (n < 2) throw ConfigError("benchmark sizes must be >= 2");
  if (cfg.repetitions < 1) throw ConfigError("repetitions must be >= 1");
  if (cfg.variants.empty()) throw ConfigError("variant list is empty");

  BenchReport report;
  report.task = cfg.task;
  report.distribution = cfg.distribution;
  report.seed = cfg.seed;

  // One engine per variant, created up front so the worker pool is reused
  // across every timed run.
  std::deque<IdentityEngine> engines;
  for (BenchVariant v : cfg.variants)
    engines.emplace_back(engine_config(cfg, v));

  using Clock = std::chrono::steady_clock;

  for (std::size_t n : cfg.sizes) {
    const SymmetricMatrix a = random_symmetric(
        cfg.seed ^ splitmix64(static_cast<std::uint64_t>(n)), n,
        cfg.distribution);

    double reference_checksum = 0.0;
    bool have_reference = false;

    for (std::size_t vi = 0; vi < cfg.variants.size(); ++vi) {
      const BenchVariant variant = cfg.variants[vi];
      const IdentityEngine& engine = engines[vi];

      // Warm-up, untimed; also the point where the solve-count contract is
      // checked, so instrumentation never sits inside a timed run.
      engine.reset_solve_count();
      double checksum = run_task(variant, cfg.task, a, engine);
      if (is_identity_cached_variant(variant))
        check_solve_count(variant, cfg.task, n,
                          engine.eigenvalue_solve_count());

      for (std::size_t run = 0; run < cfg.repetitions; ++run) {
        const auto t0 = Clock::now();
        checksum = run_task(variant, cfg.task, a, engine);
        const auto t1 = Clock::now();
        BenchRecord rec;
        rec.n = n;
        rec.variant = variant;
        rec.task = cfg.task;
        rec.run = run;
        rec.seconds = std::chrono::duration<double>(t1 - t0).count();
        rec.checksum = checksum;
        report.records.push_back(rec);
      }

      if (!std::isfinite(checksum))
        throw VariantDisagreement("non-finite checksum from " +
                                  variant_name(variant) + " at n = " +
                                  std::to_string(n));
      if (!have_reference) {
        reference_checksum = checksum;
        have_reference = true;
      } else if (std::abs(checksum - reference_checksum) >
                 1e-8 * std::max(1.0, std::abs(reference_checksum))) {
        throw VariantDisagreement(
            "checksum mismatch at n = " + std::to_string(n) + ": " +
            variant_name(variant) + " returned " + std::to_string(checksum) +
            " vs reference " + std::to_string(reference_checksum));
      }
    }
  }

  // Per (n, variant) mean and stddev over the recorded repetitions.
  for (std::size_t n : cfg.sizes) {
    for (BenchVariant v : cfg.variants) {
      double sum = 0.0, sum_sq = 0.0;
      std::size_t count = 0;
      for (const auto& rec : report.records) {
        if (rec.n != n || rec.variant != v) continue;
        sum += rec.seconds;
        sum_sq += rec.seconds * rec.seconds;
        ++count;
      }
      BenchSummary s;
      s.n = n;
      s.variant = v;
      s.mean_seconds = sum / static_cast<double>(count);
      const double var =
          sum_sq / static_cast<double>(count) - s.mean_seconds * s.mean_seconds;
      s.stddev_seconds = var > 0.0 ? std::sqrt(var) : 0.0;
      report.summaries.push_back(s);
    }
  }

  if (!cfg.output_path.empty()) write_records_csv(report, cfg.output_path);
  return report;
}

std::string speedup_table(const BenchReport& report) {
  bool have_oracle = false;
  for (const auto& s : report.summaries)
    if (s.variant == BenchVariant::kOracleFull) have_oracle = true;
  if (!have_oracle)
    throw MissingReference("report has no oracle-full reference runs");

  // Distinct sizes and non-reference variants, in first-seen order.
  std::vector<std::size_t> sizes;
  std::vector<BenchVariant> variants;
  for (const auto& s : report.summaries) {
    if (std::find(sizes.begin(), sizes.end(), s.n) == sizes.end())
      sizes.push_back(s.n);
    if (s.variant != BenchVariant::kOracleFull &&
        std::find(variants.begin(), variants.end(), s.variant) ==
            variants.end())
      variants.push_back(s.variant);
  }

  std::ostringstream out;
  char buf[64];
  out << "task: " << task_name(report.task) << "\n";
  out << "size  reference(oracle-full)";
  for (BenchVariant v : variants)
    out << "  " << variant_name(v) << "  speedup";
  out << "\n";
  for (std::size_t n : sizes) {
    const BenchSummary* oracle =
        report.find_summary(n, BenchVariant::kOracleFull);
    if (!oracle) continue;
    std::snprintf(buf, sizeof(buf), "%zu  %.6f", n, oracle->mean_seconds);
    out << buf;
    for (BenchVariant v : variants) {
      const BenchSummary* s = report.find_summary(n, v);
      if (!s) {
        out << "  -  -";
        continue;
      }
      std::snprintf(buf, sizeof(buf), "  %.6f  %.2fx", s->mean_seconds,
                    oracle->mean_seconds / s->mean_seconds);
      out << buf;
    }
    out << "\n";
  }
  return out.str();
}

void emit_plot_data(const BenchReport& report, const std::string& path) {
  if (report.summaries.empty())
    throw IoError("cannot emit plot data from an empty report");
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "n,variant,mean_seconds,stddev_seconds\n";
  // Grouped by variant so each group is one plottable curve.
  std::vector<BenchVariant> variants;
  for (const auto& s : report.summaries)
    if (std::find(variants.begin(), variants.end(), s.variant) ==
        variants.end())
      variants.push_back(s.variant);
  char buf[128];
  for (BenchVariant v : variants) {
    for (const auto& s : report.summaries) {
      if (s.variant != v) continue;
      std::snprintf(buf, sizeof(buf), "%zu,%s,%.17g,%.17g\n", s.n,
                    variant_name(v).c_str(), s.mean_seconds,
                    s.stddev_seconds);
      out << buf;
    }
  }
  if (!out) throw IoError("write failed for " + path);
}

void write_records_csv(const BenchReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "n,variant,task,run,seconds,checksum\n";
  char buf[160];
  for (const auto& rec : report.records) {
    std::snprintf(buf, sizeof(buf), "%zu,%s,%s,%zu,%.6f,%.17g\n", rec.n,
                  variant_name(rec.variant).c_str(),
                  task_name(rec.task).c_str(), rec.run, rec.seconds,
                  rec.checksum);
    out << buf;
  }
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace eigenid
