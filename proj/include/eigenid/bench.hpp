#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eigenid/identity.hpp"
#include "eigenid/matrix_io.hpp"

namespace eigenid {

enum class BenchVariant {
  kBaseline,
  kVectorizedBatched,
  kBatchedParallel,
  kLogDomain,
  kOracleFull,
};

enum class BenchTask {
  kSingleComponent,
  kSingleVector,
  kAllVectors,
};

std::string variant_name(BenchVariant v);
std::string task_name(BenchTask t);
BenchVariant parse_variant(const std::string& name);
BenchTask parse_task(const std::string& name);

struct BenchConfig {
  std::vector<std::size_t> sizes;
  std::size_t repetitions = 10;
  std::vector<BenchVariant> variants = {
      BenchVariant::kBaseline, BenchVariant::kVectorizedBatched,
      BenchVariant::kBatchedParallel, BenchVariant::kLogDomain,
      BenchVariant::kOracleFull};
  BenchTask task = BenchTask::kSingleComponent;
  std::uint64_t seed = 0;
  RandomDistribution distribution = RandomDistribution::kGaussian;
  std::size_t batch_size = 64;
  std::size_t workers = 0;  // 0 means logical core count
  std::string output_path;  // optional records CSV
};

struct BenchRecord {
  std::size_t n = 0;
  BenchVariant variant = BenchVariant::kBaseline;
  BenchTask task = BenchTask::kSingleComponent;
  std::size_t run = 0;      // repetition index, warm-up excluded
  double seconds = 0.0;     // monotonic wall clock around the kernel only
  double checksum = 0.0;    // magnitude or magnitude-sum, for verification
};

struct BenchSummary {
  std::size_t n = 0;
  BenchVariant variant = BenchVariant::kBaseline;
  double mean_seconds = 0.0;
  double stddev_seconds = 0.0;
};

struct BenchReport {
  BenchTask task = BenchTask::kSingleComponent;
  RandomDistribution distribution = RandomDistribution::kGaussian;
  std::uint64_t seed = 0;
  std::vector<BenchRecord> records;
  std::vector<BenchSummary> summaries;

  const BenchSummary* find_summary(std::size_t n, BenchVariant v) const;
  // oracle-full mean over variant mean; MissingReference without oracle runs
  double speedup(std::size_t n, BenchVariant v) const;
};

// Runs every (size, variant, repetition) cell. One seeded matrix per size is
// shared by all variants and repetitions; each variant gets one untimed
// warm-up run. Checksums of all variants must agree within 1e-8 per (n,
// task) or the run fails with VariantDisagreement.
BenchReport run_benchmark(const BenchConfig& cfg);

// Text table mirroring the reference/optimized layout: one row per size,
// reference (oracle-full) mean, then each variant's mean and speedup.
std::string speedup_table(const BenchReport& report);

// CSV with header n,variant,mean_seconds,stddev_seconds, grouped by variant.
void emit_plot_data(const BenchReport& report, const std::string& path);

// CSV with header n,variant,task,run,seconds,checksum.
void write_records_csv(const BenchReport& report, const std::string& path);

}  // namespace eigenid
