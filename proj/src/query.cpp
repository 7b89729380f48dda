#include "emograph/query.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "emograph/errors.hpp"

namespace emograph {

namespace {

NodeId require_token(const EmbeddingSet& embeddings, const std::string& token) {
  const auto id = embeddings.vocab.find(token);
  if (!id) throw UnknownToken(token);
  return *id;
}

void sort_and_truncate(std::vector<SimilarityResult>& results, std::size_t k) {
  std::sort(results.begin(), results.end(), [](const SimilarityResult& a, const SimilarityResult& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.token < b.token;
  });
  if (results.size() > k) results.resize(k);
}

}  // namespace

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector dimensions differ");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) throw ZeroVector("cosine similarity of a zero vector");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

std::vector<SimilarityResult> top_k_similar(const EmbeddingSet& embeddings,
                                            const std::string& token, std::size_t k) {
  const NodeId query = require_token(embeddings, token);
  const std::size_t n = embeddings.vocab.size();
  if (k < 1 || k > n - 1) {
    throw KOutOfRange("k must be in [1, " + std::to_string(n - 1) + "]");
  }
  const auto query_vec = embeddings.vectors.row(query);
  std::vector<SimilarityResult> results;
  results.reserve(n - 1);
  for (NodeId id = 0; id < n; ++id) {
    if (id == query) continue;
    results.push_back({embeddings.vocab.token(id),
                       cosine_similarity(query_vec, embeddings.vectors.row(id))});
  }
  sort_and_truncate(results, k);
  return results;
}

std::vector<SimilarityResult> analogy(const EmbeddingSet& embeddings, const std::string& a,
                                      const std::string& b, const std::string& c,
                                      std::size_t k) {
  const NodeId ia = require_token(embeddings, a);
  const NodeId ib = require_token(embeddings, b);
  const NodeId ic = require_token(embeddings, c);

  const std::unordered_set<NodeId> excluded{ia, ib, ic};
  const std::size_t n = embeddings.vocab.size();
  if (excluded.size() >= n) throw KOutOfRange("no candidates outside {a, b, c}");
  if (k < 1 || k > n - excluded.size()) {
    throw KOutOfRange("k must be in [1, " + std::to_string(n - excluded.size()) + "]");
  }

  const std::size_t d = embeddings.dimension();
  std::vector<double> target(d);
  const auto va = embeddings.vectors.row(ia);
  const auto vb = embeddings.vectors.row(ib);
  const auto vc = embeddings.vectors.row(ic);
  for (std::size_t i = 0; i < d; ++i) target[i] = vb[i] - va[i] + vc[i];

  std::vector<SimilarityResult> results;
  results.reserve(n - excluded.size());
  for (NodeId id = 0; id < n; ++id) {
    if (excluded.count(id)) continue;
    results.push_back({embeddings.vocab.token(id),
                       cosine_similarity(target, embeddings.vectors.row(id))});
  }
  sort_and_truncate(results, k);
  return results;
}

}  // namespace emograph
