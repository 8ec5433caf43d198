// eigenid: eigenvector component magnitudes of real symmetric matrices from
// eigenvalues of the matrix and its principal minors, with a benchmark
// harness comparing against a full-eigendecomposition oracle.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eigenid/bench.hpp"
#include "eigenid/errors.hpp"
#include "eigenid/identity.hpp"
#include "eigenid/matrix_io.hpp"

namespace {

using namespace eigenid;

struct SourceFlags {
  std::string csv_path;
  std::string mm_path;
  std::size_t random_n = 0;
  std::uint64_t seed = 0;
  std::string dist = "gaussian";
};

struct EngineFlags {
  std::size_t batch_size = 64;
  std::size_t workers = 0;
  bool log_domain = false;
  double degeneracy_tol = 1e-12;
};

void add_source_flags(CLI::App* cmd, SourceFlags& f) {
  auto* csv = cmd->add_option("--csv", f.csv_path, "dense CSV matrix file");
  auto* mm =
      cmd->add_option("--mm", f.mm_path, "MatrixMarket symmetric matrix file");
  auto* rnd = cmd->add_option("--random", f.random_n,
                              "generate a random symmetric matrix of size N");
  cmd->add_option("--seed", f.seed, "seed for --random");
  cmd->add_option("--dist", f.dist, "random distribution: gaussian | uniform")
      ->check(CLI::IsMember({"gaussian", "uniform"}));
  csv->excludes(mm)->excludes(rnd);
  mm->excludes(rnd);
}

void add_engine_flags(CLI::App* cmd, EngineFlags& f) {
  cmd->add_option("--batch-size", f.batch_size, "factor pairs per batch")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--workers", f.workers,
                  "worker count (default: logical cores)");
  cmd->add_flag("--log-domain", f.log_domain,
                "evaluate products in the log domain");
  cmd->add_option("--degeneracy-tol", f.degeneracy_tol,
                  "relative eigenvalue-gap tolerance");
}

SymmetricMatrix load_source(const SourceFlags& f) {
  if (!f.csv_path.empty())
    return load_matrix(f.csv_path, MatrixFormat::kDenseCsv);
  if (!f.mm_path.empty())
    return load_matrix(f.mm_path, MatrixFormat::kMatrixMarketSymmetric);
  if (f.random_n > 0) {
    const RandomDistribution dist = f.dist == "uniform"
                                        ? RandomDistribution::kUniform
                                        : RandomDistribution::kGaussian;
    return random_symmetric(f.seed, f.random_n, dist);
  }
  throw ConfigError("no matrix source given: use --csv, --mm or --random");
}

IdentityConfig engine_config(const EngineFlags& f) {
  IdentityConfig cfg;
  cfg.batch_size = f.batch_size;
  cfg.workers = f.workers;
  cfg.degeneracy_tol = f.degeneracy_tol;
  if (f.log_domain)
    cfg.evaluation = IdentityConfig::Evaluation::kLogDomain;
  if (cfg.workers == 0) {
    if (const char* env = std::getenv("EIGENID_WORKERS"))
      cfg.workers = static_cast<std::size_t>(std::strtoull(env, nullptr, 10));
  }
  return cfg;
}

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

int usage_error(const std::string& msg) {
  std::cerr << "usage error: " << msg << "\n";
  return 2;
}

int run_component(const SourceFlags& sf, const EngineFlags& ef, std::size_t i,
                  std::size_t j) {
  const SymmetricMatrix a = load_source(sf);
  if (i >= a.n() || j >= a.n())
    return usage_error("indices (i=" + std::to_string(i) + ", j=" +
                       std::to_string(j) + ") out of range for n = " +
                       std::to_string(a.n()));
  IdentityEngine engine(engine_config(ef));
  const MagnitudeResult r = ef.log_domain
                                ? engine.log_domain_magnitude(a, i, j)
                                : engine.component_magnitude(a, i, j);
  std::cout << fmt12(r.value) << "\n";
  return 0;
}

int run_vector(const SourceFlags& sf, const EngineFlags& ef, std::size_t i,
               const std::string& out_path, bool signs) {
  const SymmetricMatrix a = load_source(sf);
  if (i >= a.n())
    return usage_error("index i=" + std::to_string(i) +
                       " out of range for n = " + std::to_string(a.n()));
  IdentityEngine engine(engine_config(ef));
  const auto results = engine.vector_magnitudes(a, i);

  std::vector<double> values(a.n());
  for (std::size_t j = 0; j < a.n(); ++j) values[j] = results[j].value;

  if (signs) {
    const Spectrum s = eigenvalues(a);
    const auto v = recover_signs(a, i, values, s[i]);
    for (std::size_t j = 0; j < a.n(); ++j)
      std::cout << fmt12(v[j]) << "\n";
    return 0;
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot open " + out_path + " for writing");
    out << "j,magnitude\n";
    for (std::size_t j = 0; j < a.n(); ++j) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", j, values[j]);
      out << buf;
    }
  } else {
    for (double v : values) std::cout << fmt12(v) << "\n";
  }
  return 0;
}

int run_full(const SourceFlags& sf, const EngineFlags& ef,
             const std::string& out_path) {
  const SymmetricMatrix a = load_source(sf);
  IdentityEngine engine(engine_config(ef));
  const auto m = engine.all_magnitudes(a);
  const std::size_t n = a.n();
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot open " + out_path + " for writing");
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%s%.17g", i ? "," : "", m[j * n + i]);
        out << buf;
      }
      out << "\n";
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i)
        std::cout << (i ? "," : "") << fmt12(m[j * n + i]);
      std::cout << "\n";
    }
  }
  return 0;
}

int run_verify(const SourceFlags& sf, const EngineFlags& ef,
               std::size_t oracle_cap) {
  const SymmetricMatrix a = load_source(sf);
  const std::size_t n = a.n();
  if (n > oracle_cap)
    throw OracleCapExceeded("n = " + std::to_string(n) +
                            " exceeds the oracle cap " +
                            std::to_string(oracle_cap));

  IdentityEngine engine(engine_config(ef));
  std::vector<double> m;
  try {
    m = engine.all_magnitudes(a);
  } catch (const DegenerateEigenvalue& e) {
    // Expected outcome for repeated eigenvalues, not a failure.
    std::cout << "status: DEGENERATE (" << e.what() << ")\n";
    return 0;
  }

  const EigenDecomposition dec = jacobi_eigendecomposition(a);
  double max_dev = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      const double o = dec.vector_entry(j, i);
      max_dev = std::max(max_dev, std::abs(m[j * n + i] - o * o));
    }

  double max_sum_dev = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double row = 0.0, col = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      row += m[j * n + i];
      col += m[i * n + j];
    }
    max_sum_dev = std::max({max_sum_dev, std::abs(row - 1.0),
                            std::abs(col - 1.0)});
  }

  const Spectrum full = eigenvalues(a);
  const double interlace_tol = 1e-9 * a.frobenius_norm();
  std::size_t violations = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const Spectrum minor = eigenvalues(a.minor_matrix(j));
    for (std::size_t k = 0; k + 1 < n; ++k)
      if (minor[k] < full[k] - interlace_tol ||
          minor[k] > full[k + 1] + interlace_tol)
        ++violations;
  }

  std::cout << "status: OK\n"
            << "max abs deviation vs oracle: " << fmt12(max_dev) << "\n"
            << "max row/col sum deviation:   " << fmt12(max_sum_dev) << "\n"
            << "interlacing violations:      " << violations << "\n";
  return 0;
}

int run_bench(const BenchConfig& cfg, const std::string& plot_path) {
  const BenchReport report = run_benchmark(cfg);
  const bool have_oracle =
      std::find(cfg.variants.begin(), cfg.variants.end(),
                BenchVariant::kOracleFull) != cfg.variants.end();
  if (have_oracle) {
    std::cout << speedup_table(report);
  } else {
    for (const auto& s : report.summaries)
      std::cout << s.n << "  " << variant_name(s.variant) << "  "
                << fmt12(s.mean_seconds) << " s (stddev "
                << fmt12(s.stddev_seconds) << ")\n";
  }
  if (!plot_path.empty()) emit_plot_data(report, plot_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "eigenvector component magnitudes via eigenvalues of matrix minors"};
  app.require_subcommand(1);

  SourceFlags sf;
  EngineFlags ef;
  std::size_t opt_i = 0, opt_j = 0;
  std::string out_path;
  bool signs = false;
  std::size_t oracle_cap = 200;

  auto* component =
      app.add_subcommand("component", "one squared component magnitude");
  add_source_flags(component, sf);
  add_engine_flags(component, ef);
  component->add_option("-i", opt_i, "eigenvalue index (ascending order)")
      ->required();
  component->add_option("-j", opt_j, "component index")->required();

  auto* vector_cmd =
      app.add_subcommand("vector", "all component magnitudes of one vector");
  add_source_flags(vector_cmd, sf);
  add_engine_flags(vector_cmd, ef);
  vector_cmd->add_option("-i", opt_i, "eigenvalue index")->required();
  vector_cmd->add_flag("--signs", signs,
                       "recover component signs from the row equations");
  vector_cmd->add_option("--out", out_path, "write results as CSV");

  auto* full =
      app.add_subcommand("full", "squared magnitudes for all eigenvectors");
  add_source_flags(full, sf);
  add_engine_flags(full, ef);
  full->add_option("--out", out_path, "write the n x n matrix as CSV");

  auto* verify = app.add_subcommand(
      "verify", "compare against the full-eigendecomposition oracle");
  add_source_flags(verify, sf);
  add_engine_flags(verify, ef);
  verify->add_option("--oracle-cap", oracle_cap,
                     "largest n the oracle run accepts");

  BenchConfig bcfg;
  bcfg.sizes = {2, 100, 250, 500, 1000, 2000};
  std::vector<std::string> variant_names;
  std::string task = "single-component";
  std::string plot_path;
  auto* bench = app.add_subcommand("bench", "timed variant comparison");
  bench->add_option("--sizes", bcfg.sizes, "matrix sizes to benchmark");
  bench->add_option("--reps", bcfg.repetitions, "timed repetitions per cell");
  bench->add_option("--variants", variant_names,
                    "subset of: baseline vectorized-batched batched-parallel "
                    "log-domain oracle-full");
  bench->add_option("--task", task,
                    "single-component | single-vector | all-vectors");
  bench->add_option("--seed", bcfg.seed, "matrix generation seed");
  bench->add_option("--batch-size", bcfg.batch_size, "factor pairs per batch");
  bench->add_option("--workers", bcfg.workers, "parallel variant workers");
  bench->add_option("--out", bcfg.output_path, "write per-run records CSV");
  bench->add_option("--plot-out", plot_path, "write per-variant means CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (component->parsed()) return run_component(sf, ef, opt_i, opt_j);
    if (vector_cmd->parsed())
      return run_vector(sf, ef, opt_i, out_path, signs);
    if (full->parsed()) return run_full(sf, ef, out_path);
    if (verify->parsed()) return run_verify(sf, ef, oracle_cap);
    if (bench->parsed()) {
      bcfg.task = parse_task(task);
      if (!variant_names.empty()) {
        bcfg.variants.clear();
        for (const auto& name : variant_names)
          bcfg.variants.push_back(parse_variant(name));
      }
      if (bcfg.workers == 0) {
        if (const char* env = std::getenv("EIGENID_WORKERS"))
          bcfg.workers =
              static_cast<std::size_t>(std::strtoull(env, nullptr, 10));
      }
      return run_bench(bcfg, plot_path);
    }
  } catch (const ConfigError& e) {
    return usage_error(e.what());
  } catch (const DegenerateEigenvalue& e) {
    std::cerr << "error: degenerate eigenvalue (gap " << e.gap()
              << "): " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
