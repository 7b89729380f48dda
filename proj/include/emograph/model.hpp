#pragma once

#include <span>
#include <vector>

#include "emograph/embedding.hpp"
#include "emograph/graph.hpp"

namespace emograph {

/// Numerically stable logistic function; no overflow for |x| up to ~745.
double sigmoid(double x);

/// log σ(x) without intermediate overflow/underflow.
double log_sigmoid(double x);

/// First-order proximity p1(i,j) = σ(u_i · u_j). Symmetric, increasing in
/// the dot product. Throws DimensionMismatch.
double first_order_prob(std::span<const double> ui, std::span<const double> uj);

/// Maximum vocabulary for the exact-softmax paths.
inline constexpr std::size_t kExactSoftmaxMaxNodes = 10'000;

/// Second-order context distribution p2(·|center) over all nodes:
/// softmax_k(u'_k · u_center), computed with max-subtraction. Requires a
/// context matrix and |V| ≤ kExactSoftmaxMaxNodes (else VocabularyTooLarge).
std::vector<double> second_order_softmax(const EmbeddingMatrix& emb, NodeId center);

/// First-order objective: −Σ_{(i,j)∈E} w_ij log σ(u_i·u_j), summed over
/// undirected edges.
double objective_first(const CooccurrenceGraph& g, const EmbeddingMatrix& emb);

/// Second-order objective: −Σ_i Σ_{j∈N(i)} w_ij log p2(j|i); every
/// undirected edge contributes in both directions. Exact-softmax path,
/// same size cap as the softmax.
double objective_second(const CooccurrenceGraph& g, const EmbeddingMatrix& emb);

/// Mean over centers of KL(p̃2(·|i) ‖ p2(·|i)), where p̃2(j|i) = w_ij/d_i.
/// Centers with no neighbors are excluded.
double mean_second_order_kl(const CooccurrenceGraph& g, const EmbeddingMatrix& emb);

/// Negative-sampling surrogate for one (center, context) pair:
///   −log σ(t_j·u_i) − Σ_n log σ(−t_n·u_i)
/// where targets t come from the context matrix for Order::Second and from
/// the vertex matrix for Order::First. Equals (K+1)·log 2 at zero embeddings.
double negative_sampling_loss(const EmbeddingMatrix& emb, Order order, NodeId center,
                              NodeId context, std::span<const NodeId> negatives);

/// −w_ij · log σ(u_i·u_j): one edge’s contribution to the first-order objective.
double first_order_pair_loss(const EmbeddingMatrix& emb, NodeId i, NodeId j, double weight);

struct PairGradient {
  std::vector<double> d_i;
  std::vector<double> d_j;
};

/// Analytic gradient of first_order_pair_loss; d_i = −w·(1−p1)·u_j and
/// symmetrically for d_j.
PairGradient first_order_pair_gradient(const EmbeddingMatrix& emb, NodeId i, NodeId j,
                                       double weight);

struct NegSamplingGradient {
  std::vector<double> d_center;
  std::vector<double> d_context;
  std::vector<std::vector<double>> d_negatives;
};

/// Analytic gradient of negative_sampling_loss with respect to the center
/// vector, the positive target and each negative target. Assumes the
/// involved node ids are distinct.
NegSamplingGradient negative_sampling_gradient(const EmbeddingMatrix& emb, Order order,
                                               NodeId center, NodeId context,
                                               std::span<const NodeId> negatives);

/// Full gradient of objective_first with respect to the vertex matrix.
Matrix objective_first_gradient(const CooccurrenceGraph& g, const EmbeddingMatrix& emb);

struct SecondOrderGradient {
  Matrix d_vertex;
  Matrix d_context;
};

/// Full gradient of objective_second with respect to both matrices
/// (exact softmax).
SecondOrderGradient objective_second_gradient(const CooccurrenceGraph& g,
                                              const EmbeddingMatrix& emb);

}  // namespace emograph
