#pragma once

#include <cstdint>
#include <string>

#include "eigenid/matrix.hpp"

namespace eigenid {

enum class MatrixFormat {
  kDenseCsv,               // one row per line, comma separated, no header
  kMatrixMarketSymmetric,  // coordinate real symmetric, lower triangle
};

enum class RandomDistribution {
  kGaussian,
  kUniform,  // uniform on (-1, 1)
};

struct MatrixSource {
  enum class Kind { kFile, kRandom } kind = Kind::kRandom;
  // file source
  std::string path;
  MatrixFormat format = MatrixFormat::kDenseCsv;
  // random source
  std::uint64_t seed = 0;
  RandomDistribution distribution = RandomDistribution::kGaussian;
  std::size_t n = 0;

  static MatrixSource file(std::string path, MatrixFormat format);
  static MatrixSource random(std::uint64_t seed, RandomDistribution dist,
                             std::size_t n);
};

// Materializes a matrix from a source. Random generation draws a full n x n
// array from a seeded mt19937_64 and symmetrizes it; the result is
// bit-identical for a fixed (seed, distribution, n) on every run.
SymmetricMatrix generate(const MatrixSource& source);

SymmetricMatrix random_symmetric(std::uint64_t seed, std::size_t n,
                                 RandomDistribution dist =
                                     RandomDistribution::kGaussian);

SymmetricMatrix load_matrix(const std::string& path, MatrixFormat format);
void store_matrix(const SymmetricMatrix& a, const std::string& path,
                  MatrixFormat format);

}  // namespace eigenid
