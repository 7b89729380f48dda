#pragma once

#include <span>
#include <string>
#include <vector>

#include "emograph/embedding.hpp"

namespace emograph {

struct SimilarityResult {
  std::string token;
  double score;  // cosine similarity in [-1, 1]
};

/// a·b / (|a||b|), clamped to [-1, 1] against rounding. Throws ZeroVector
/// when either vector has zero norm, DimensionMismatch on unequal sizes.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

/// The k most cosine-similar tokens to `token`, excluding the token itself.
/// Exact full scan; sorted by descending score, ties broken by ascending
/// token serialization. Requires 1 ≤ k ≤ |V|−1.
std::vector<SimilarityResult> top_k_similar(const EmbeddingSet& embeddings,
                                            const std::string& token, std::size_t k);

/// a : b = c : ?, ranking all tokens except {a, b, c} by cosine similarity
/// to vec(b) − vec(a) + vec(c).
std::vector<SimilarityResult> analogy(const EmbeddingSet& embeddings, const std::string& a,
                                      const std::string& b, const std::string& c,
                                      std::size_t k);

}  // namespace emograph
