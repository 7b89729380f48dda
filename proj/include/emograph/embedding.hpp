#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "emograph/vocabulary.hpp"

namespace emograph {

enum class Order { First, Second };

/// Dense row-major matrix of doubles, zero-initialized.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  std::span<double> flat() { return data_; }
  std::span<const double> flat() const { return data_; }

  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Model parameters: per-node vertex vectors u_i, plus per-node context
/// vectors u'_i when training the second-order objective. First-order
/// models carry no context matrix.
struct EmbeddingMatrix {
  Matrix vertex;
  Matrix context;

  EmbeddingMatrix() = default;
  EmbeddingMatrix(std::size_t nodes, std::size_t dim, bool with_context)
      : vertex(nodes, dim), context(with_context ? nodes : 0, with_context ? dim : 0) {}

  bool has_context() const noexcept { return context.rows() > 0; }
  std::size_t node_count() const noexcept { return vertex.rows(); }
  std::size_t dimension() const noexcept { return vertex.cols(); }
};

/// Embeddings as consumed by queries and evaluation: token per row.
struct EmbeddingSet {
  Vocabulary vocab;
  Matrix vectors;

  std::size_t dimension() const noexcept { return vectors.cols(); }
};

/// Text format: header "|V| d", then one line per node
/// "token v1 v2 ... vd" with 9-significant-digit floats. The vertex matrix
/// is what gets persisted; context vectors are a training-time auxiliary.
void save_embeddings(const Matrix& vectors, const Vocabulary& vocab,
                     const std::filesystem::path& path);
void save_embeddings(const EmbeddingMatrix& embeddings, const Vocabulary& vocab,
                     const std::filesystem::path& path);

EmbeddingSet load_embeddings(const std::filesystem::path& path);

}  // namespace emograph
