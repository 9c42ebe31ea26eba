// Copyright 2026 The spatialav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spatialav/embedding_metrics.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include <Eigen/Eigenvalues>

#include "spatialav/errors.h"

namespace spatialav {
namespace {

constexpr double kSymmetryTolerance = 1e-4;
constexpr double kRegularization = 1e-6;

Eigen::MatrixXd Symmetrized(const Eigen::MatrixXd& m) {
  return 0.5 * (m + m.transpose());
}

// Adds eps*I when the spectrum dips below zero.
Eigen::MatrixXd Regularized(const Eigen::MatrixXd& cov) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov,
                                                    Eigen::EigenvaluesOnly);
  if (cov.rows() == 0 || es.eigenvalues().minCoeff() >= 0.0) return cov;
  const double eps = kRegularization * cov.trace() / cov.rows();
  return cov + eps * Eigen::MatrixXd::Identity(cov.rows(), cov.cols());
}

std::uint32_t ReadU32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) |
         (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) |
         (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) {
    out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xff));
  }
}

}  // namespace

EmbeddingSet::EmbeddingSet(Matrix data) : data_(std::move(data)) {
  if (data_.rows() == 0 || data_.cols() == 0) {
    throw ArgumentError("EmbeddingSet: empty matrix");
  }
  if (!data_.allFinite()) throw DataError("EmbeddingSet: non-finite entry");
}

EmbeddingSet EmbeddingSet::Concatenated(const EmbeddingSet& other) const {
  if (other.d() != d()) {
    throw ArgumentError("EmbeddingSet: dimension mismatch (" +
                        std::to_string(d()) + " vs " +
                        std::to_string(other.d()) + ")");
  }
  Matrix joined(data_.rows() + other.data_.rows(), data_.cols());
  joined << data_, other.data_;
  return EmbeddingSet(std::move(joined));
}

GaussianStats FitGaussian(const EmbeddingSet& set) {
  if (set.n() < 2) {
    throw ArgumentError("FitGaussian: need at least 2 rows, got " +
                        std::to_string(set.n()));
  }
  const Eigen::MatrixXd x = set.data().cast<double>();
  GaussianStats stats;
  stats.mean = x.colwise().mean().transpose();
  const Eigen::MatrixXd centered = x.rowwise() - stats.mean.transpose();
  stats.cov = Symmetrized(centered.transpose() * centered /
                          static_cast<double>(set.n() - 1));
  return stats;
}

Eigen::MatrixXd SqrtmPsd(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw ArgumentError("SqrtmPsd: not square");
  if (m.size() > 0 && (m - m.transpose()).cwiseAbs().maxCoeff() >
                          kSymmetryTolerance) {
    throw ArgumentError("SqrtmPsd: matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Symmetrized(m));
  const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return Symmetrized(es.eigenvectors() * root.asDiagonal() *
                     es.eigenvectors().transpose());
}

double FrechetDistance(const GaussianStats& a, const GaussianStats& b) {
  const auto dim = a.mean.size();
  if (b.mean.size() != dim || a.cov.rows() != dim || a.cov.cols() != dim ||
      b.cov.rows() != dim || b.cov.cols() != dim) {
    throw ArgumentError("FrechetDistance: dimension mismatch");
  }
  const Eigen::MatrixXd cov_a = Regularized(Symmetrized(a.cov));
  const Eigen::MatrixXd cov_b = Regularized(Symmetrized(b.cov));

  // Tr((A B)^1/2) == Tr((A^1/2 B A^1/2)^1/2); the right-hand product is
  // symmetric PSD so only its real eigenvalues are needed.
  const Eigen::MatrixXd root_a = SqrtmPsd(cov_a);
  const Eigen::MatrixXd inner = Symmetrized(root_a * cov_b * root_a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(inner,
                                                    Eigen::EigenvaluesOnly);
  const double trace_cross = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();

  const double mean_term = (a.mean - b.mean).squaredNorm();
  const double value =
      mean_term + cov_a.trace() + cov_b.trace() - 2.0 * trace_cross;
  return std::max(value, 0.0);
}

double FrechetDistance(const EmbeddingSet& a, const EmbeddingSet& b) {
  if (a.d() != b.d()) {
    throw ArgumentError("FrechetDistance: embedding dimensions differ (" +
                        std::to_string(a.d()) + " vs " +
                        std::to_string(b.d()) + ")");
  }
  return FrechetDistance(FitGaussian(a), FitGaussian(b));
}

EmbeddingSet DecodeEmbeddings(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "EMB1", 4) != 0) {
    throw FormatError("emb: bad magic");
  }
  const std::uint32_t n = ReadU32(bytes, 4);
  const std::uint32_t d = ReadU32(bytes, 8);
  if (n == 0 || d == 0) {
    throw FormatError("emb: N and D must be >= 1 (N=" + std::to_string(n) +
                      ", D=" + std::to_string(d) + ")");
  }
  const std::uint64_t expected = 12 + 4ull * n * d;
  if (bytes.size() != expected) {
    throw FormatError("emb: payload is " + std::to_string(bytes.size()) +
                      " bytes, expected " + std::to_string(expected));
  }
  EmbeddingSet::Matrix m(n, d);
  for (std::uint32_t r = 0; r < n; ++r) {
    for (std::uint32_t c = 0; c < d; ++c) {
      m(r, c) = std::bit_cast<float>(
          ReadU32(bytes, 12 + 4 * (static_cast<std::size_t>(r) * d + c)));
    }
  }
  try {
    return EmbeddingSet(std::move(m));
  } catch (const DataError& e) {
    throw FormatError(std::string("emb: ") + e.what());
  }
}

std::vector<std::uint8_t> EncodeEmbeddings(const EmbeddingSet& set) {
  std::vector<std::uint8_t> out = {'E', 'M', 'B', '1'};
  out.reserve(12 + 4 * set.n() * set.d());
  PutU32(out, static_cast<std::uint32_t>(set.n()));
  PutU32(out, static_cast<std::uint32_t>(set.d()));
  const auto& m = set.data();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      PutU32(out, std::bit_cast<std::uint32_t>(m(r, c)));
    }
  }
  return out;
}

EmbeddingSet LoadEmbeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return DecodeEmbeddings(bytes);
}

void SaveEmbeddings(const EmbeddingSet& set,
                    const std::filesystem::path& path) {
  const auto bytes = EncodeEmbeddings(set);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace spatialav
