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

// Frechet distance between Gaussian fits of embedding sets.
//
// FAD (real vs generated audio embeddings) and FAVD (video vs generated
// audio embeddings) are the same computation over different pairs of sets.
// Both sets must share the embedding dimension.

#ifndef SPATIALAV_EMBEDDING_METRICS_H_
#define SPATIALAV_EMBEDDING_METRICS_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace spatialav {

// N x D row-major embeddings, one row per clip/segment.
class EmbeddingSet {
 public:
  using Matrix =
      Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  // Throws DataError on non-finite entries, ArgumentError if empty.
  explicit EmbeddingSet(Matrix data);

  const Matrix& data() const { return data_; }
  std::size_t n() const { return static_cast<std::size_t>(data_.rows()); }
  std::size_t d() const { return static_cast<std::size_t>(data_.cols()); }

  // Rows of `other` appended; dimensions must match.
  EmbeddingSet Concatenated(const EmbeddingSet& other) const;

  bool operator==(const EmbeddingSet& other) const {
    return data_.rows() == other.data_.rows() &&
           data_.cols() == other.data_.cols() && data_ == other.data_;
  }

 private:
  Matrix data_;
};

struct GaussianStats {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

// Sample mean and unbiased (N-1) covariance, symmetrized.
GaussianStats FitGaussian(const EmbeddingSet& set);

// Principal square root of a symmetric PSD matrix via eigendecomposition;
// negative eigenvalues are clamped to 0. Throws ArgumentError when
// max |m - m^T| exceeds 1e-4.
Eigen::MatrixXd SqrtmPsd(const Eigen::MatrixXd& m);

// ||mu1 - mu2||^2 + Tr(S1 + S2 - 2 (S1^1/2 S2 S1^1/2)^1/2), clamped at 0.
// A covariance whose smallest eigenvalue is negative gets eps*I added,
// eps = 1e-6 * trace / D, before the square roots.
double FrechetDistance(const GaussianStats& a, const GaussianStats& b);

double FrechetDistance(const EmbeddingSet& a, const EmbeddingSet& b);

// EMB1 container: "EMB1", u32 LE N, u32 LE D, N*D f32 LE row-major.
EmbeddingSet DecodeEmbeddings(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> EncodeEmbeddings(const EmbeddingSet& set);
EmbeddingSet LoadEmbeddings(const std::filesystem::path& path);
void SaveEmbeddings(const EmbeddingSet& set, const std::filesystem::path& path);

}  // namespace spatialav

#endif  // SPATIALAV_EMBEDDING_METRICS_H_
