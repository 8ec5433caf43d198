#include "eigenid/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eigenid/errors.hpp"

namespace eigenid {

MatrixSource MatrixSource::file(std::string path, MatrixFormat format) {
  MatrixSource s;
  s.kind = Kind::kFile;
  s.path = std::move(path);
  s.format = format;
  return s;
}

MatrixSource MatrixSource::random(std::uint64_t seed, RandomDistribution dist,
                                  std::size_t n) {
  MatrixSource s;
  s.kind = Kind::kRandom;
  s.seed = seed;
  s.distribution = dist;
  s.n = n;
  return s;
}

namespace {

// mt19937_64 output is fully specified by the standard; the variate
// transforms below are written out by hand because std::normal_distribution
// and friends are implementation-defined, which would break bit-identical
// reproducibility across toolchains.
class SeededDraws {
 public:
  explicit SeededDraws(std::uint64_t seed) : gen_(seed) {}

  // uniform on [0, 1) with 53-bit resolution
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform_open() {  // uniform on (-1, 1)
    for (;;) {
      double v = 2.0 * unit() - 1.0;
      if (v > -1.0) return v;
    }
  }

  double gaussian() {  // Box-Muller, one value per pair of draws
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = unit(), u2 = unit();
    while (u1 <= 0.0) u1 = unit();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_value(const std::string& tok, const std::string& context) {
  try {
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos])))
      ++pos;
    if (pos != tok.size())
      throw ParseError("trailing characters in value '" + tok + "' " + context);
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("cannot parse value '" + tok + "' " + context);
  }
}

SymmetricMatrix load_dense_csv(std::ifstream& in, const std::string& path) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ','))
      row.push_back(parse_value(tok, "in " + path));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no data rows in " + path);
  std::size_t n = rows.size();
  std::vector<double> entries;
  entries.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n)
      throw DimensionMismatch("non-square CSV matrix in " + path);
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return SymmetricMatrix::build(n, std::move(entries));
}

SymmetricMatrix load_matrix_market(std::ifstream& in, const std::string& path) {
  std::string header;
  if (!std::getline(in, header))
    throw ParseError("empty MatrixMarket file " + path);
  {
    std::stringstream ss(header);
    std::string banner, obj, fmt, field, sym;
    ss >> banner >> obj >> fmt >> field >> sym;
    if (banner != "%%MatrixMarket" || obj != "matrix" || fmt != "coordinate" ||
        field != "real" || sym != "symmetric")
      throw ParseError("unsupported MatrixMarket header in " + path +
                       ": " + header);
  }
  std::string line;
  std::size_t n = 0, cols = 0, nnz = 0;
  bool have_size = false;
  std::vector<double> entries;
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '%') continue;
    std::stringstream ss(line);
    if (!have_size) {
      if (!(ss >> n >> cols >> nnz))
        throw ParseError("bad size line in " + path);
      if (n != cols)
        throw DimensionMismatch("MatrixMarket matrix is not square in " + path);
      if (n < 1) throw DimensionMismatch("empty matrix in " + path);
      entries.assign(n * n, 0.0);
      have_size = true;
      continue;
    }
    std::size_t r, c;
    double v;
    if (!(ss >> r >> c >> v))
      throw ParseError("bad entry line in " + path + ": " + line);
    if (r < 1 || r > n || c < 1 || c > n)
      throw ParseError("index out of range in " + path + ": " + line);
    if (c > r)
      throw ParseError("upper-triangle entry in symmetric file " + path);
    entries[(r - 1) * n + (c - 1)] = v;
    entries[(c - 1) * n + (r - 1)] = v;
    ++seen;
  }
  if (!have_size) throw ParseError("missing size line in " + path);
  if (seen != nnz)
    throw ParseError("entry count mismatch in " + path + ": expected " +
                     std::to_string(nnz) + ", got " + std::to_string(seen));
  return SymmetricMatrix::build(n, std::move(entries));
}

}  // namespace

SymmetricMatrix random_symmetric(std::uint64_t seed, std::size_t n,
                                 RandomDistribution dist) {
  if (n < 1) throw DimensionMismatch("random matrix dimension must be >= 1");
  SeededDraws draws(seed);
  std::vector<double> entries(n * n);
  for (double& v : entries)
    v = dist == RandomDistribution::kGaussian ? draws.gaussian()
                                              : draws.uniform_open();
  return SymmetricMatrix::build(n, std::move(entries),
                                SymmetryPolicy::kSymmetrize);
}

SymmetricMatrix generate(const MatrixSource& source) {
  if (source.kind == MatrixSource::Kind::kRandom)
    return random_symmetric(source.seed, source.n, source.distribution);
  return load_matrix(source.path, source.format);
}

SymmetricMatrix load_matrix(const std::string& path, MatrixFormat format) {
  std::ifstream in(path);
  if (!in) throw FileNotFound("cannot open " + path);
  return format == MatrixFormat::kDenseCsv ? load_dense_csv(in, path)
                                           : load_matrix_market(in, path);
}

void store_matrix(const SymmetricMatrix& a, const std::string& path,
                  MatrixFormat format) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  std::size_t n = a.n();
  if (format == MatrixFormat::kDenseCsv) {
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        if (c) out << ',';
        out << format_value(a(r, c));
      }
      out << '\n';
    }
  } else {
    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    std::size_t nnz = n * (n + 1) / 2;
    out << n << ' ' << n << ' ' << nnz << '\n';
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c <= r; ++c)
        out << (r + 1) << ' ' << (c + 1) << ' ' << format_value(a(r, c))
            << '\n';
  }
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace eigenid
