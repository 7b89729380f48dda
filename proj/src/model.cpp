#include "emograph/model.hpp"

#include <algorithm>
#include <cmath>

#include "emograph/errors.hpp"

namespace emograph {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector dimensions differ");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

// Target rows live in the context matrix for the second-order model and in
// the vertex matrix for the first-order one.
const Matrix& target_matrix(const EmbeddingMatrix& emb, Order order) {
  if (order == Order::Second) {
    if (!emb.has_context()) {
      throw DimensionMismatch("second-order model requires a context matrix");
    }
    return emb.context;
  }
  return emb.vertex;
}

void check_exact_size(std::size_t nodes) {
  if (nodes > kExactSoftmaxMaxNodes) {
    throw VocabularyTooLarge("exact softmax limited to " +
                             std::to_string(kExactSoftmaxMaxNodes) + " nodes, got " +
                             std::to_string(nodes));
  }
}

// Log-softmax denominator and per-node logits for one center.
struct SoftmaxRow {
  std::vector<double> logits;
  double max_logit;
  double log_sum;  // log Σ exp(logit − max)
};

SoftmaxRow softmax_row(const EmbeddingMatrix& emb, NodeId center) {
  check_exact_size(emb.node_count());
  const Matrix& ctx = target_matrix(emb, Order::Second);
  const auto u = emb.vertex.row(center);
  SoftmaxRow row;
  row.logits.resize(emb.node_count());
  for (NodeId k = 0; k < emb.node_count(); ++k) {
    row.logits[k] = dot(ctx.row(k), u);
  }
  row.max_logit = *std::max_element(row.logits.begin(), row.logits.end());
  double sum = 0.0;
  for (double logit : row.logits) sum += std::exp(logit - row.max_logit);
  row.log_sum = std::log(sum);
  return row;
}

}  // namespace

double sigmoid(double x) {
  if (x >= 0.0) {
    const double t = std::exp(-x);
    return 1.0 / (1.0 + t);
  }
  const double t = std::exp(x);
  return t / (1.0 + t);
}

double log_sigmoid(double x) {
  if (x >= 0.0) return -std::log1p(std::exp(-x));
  return x - std::log1p(std::exp(x));
}

double first_order_prob(std::span<const double> ui, std::span<const double> uj) {
  return sigmoid(dot(ui, uj));
}

std::vector<double> second_order_softmax(const EmbeddingMatrix& emb, NodeId center) {
  const SoftmaxRow row = softmax_row(emb, center);
  std::vector<double> probs(row.logits.size());
  for (std::size_t k = 0; k < probs.size(); ++k) {
    probs[k] = std::exp(row.logits[k] - row.max_logit - row.log_sum);
  }
  return probs;
}

double objective_first(const CooccurrenceGraph& g, const EmbeddingMatrix& emb) {
  double total = 0.0;
  for (const Edge& e : g.edges()) {
    total -= static_cast<double>(e.weight) * log_sigmoid(dot(emb.vertex.row(e.i), emb.vertex.row(e.j)));
  }
  return total;
}

double objective_second(const CooccurrenceGraph& g, const EmbeddingMatrix& emb) {
  check_exact_size(g.node_count());
  double total = 0.0;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const auto nbrs = g.neighbors(i);
    if (nbrs.empty()) continue;
    const SoftmaxRow row = softmax_row(emb, i);
    for (const Neighbor& nb : nbrs) {
      const double log_prob = row.logits[nb.id] - row.max_logit - row.log_sum;
      total -= static_cast<double>(nb.weight) * log_prob;
    }
  }
  return total;
}

double mean_second_order_kl(const CooccurrenceGraph& g, const EmbeddingMatrix& emb) {
  check_exact_size(g.node_count());
  double total = 0.0;
  std::size_t centers = 0;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const auto nbrs = g.neighbors(i);
    if (nbrs.empty()) continue;
    const SoftmaxRow row = softmax_row(emb, i);
    const double di = static_cast<double>(g.degree(i));
    double kl = 0.0;
    for (const Neighbor& nb : nbrs) {
      const double p_emp = static_cast<double>(nb.weight) / di;
      const double log_model = row.logits[nb.id] - row.max_logit - row.log_sum;
      kl += p_emp * (std::log(p_emp) - log_model);
    }
    total += kl;
    ++centers;
  }
  return centers == 0 ? 0.0 : total / static_cast<double>(centers);
}

double negative_sampling_loss(const EmbeddingMatrix& emb, Order order, NodeId center,
                              NodeId context, std::span<const NodeId> negatives) {
  const Matrix& targets = target_matrix(emb, order);
  const auto u = emb.vertex.row(center);
  double loss = -log_sigmoid(dot(targets.row(context), u));
  for (NodeId n : negatives) {
    loss -= log_sigmoid(-dot(targets.row(n), u));
  }
  return loss;
}

double first_order_pair_loss(const EmbeddingMatrix& emb, NodeId i, NodeId j, double weight) {
  return -weight * log_sigmoid(dot(emb.vertex.row(i), emb.vertex.row(j)));
}

PairGradient first_order_pair_gradient(const EmbeddingMatrix& emb, NodeId i, NodeId j,
                                       double weight) {
  const auto ui = emb.vertex.row(i);
  const auto uj = emb.vertex.row(j);
  const double coeff = -weight * (1.0 - sigmoid(dot(ui, uj)));
  PairGradient grad;
  grad.d_i.resize(ui.size());
  grad.d_j.resize(ui.size());
  for (std::size_t k = 0; k < ui.size(); ++k) {
    grad.d_i[k] = coeff * uj[k];
    grad.d_j[k] = coeff * ui[k];
  }
  return grad;
}

NegSamplingGradient negative_sampling_gradient(const EmbeddingMatrix& emb, Order order,
                                               NodeId center, NodeId context,
                                               std::span<const NodeId> negatives) {
  const Matrix& targets = target_matrix(emb, order);
  const auto u = emb.vertex.row(center);
  const std::size_t d = u.size();

  NegSamplingGradient grad;
  grad.d_center.assign(d, 0.0);
  grad.d_context.assign(d, 0.0);
  grad.d_negatives.assign(negatives.size(), std::vector<double>(d, 0.0));

  const auto tj = targets.row(context);
  const double pos_coeff = -(1.0 - sigmoid(dot(tj, u)));
  for (std::size_t k = 0; k < d; ++k) {
    grad.d_center[k] += pos_coeff * tj[k];
    grad.d_context[k] = pos_coeff * u[k];
  }
  for (std::size_t n = 0; n < negatives.size(); ++n) {
    const auto tn = targets.row(negatives[n]);
    const double neg_coeff = sigmoid(dot(tn, u));
    for (std::size_t k = 0; k < d; ++k) {
      grad.d_center[k] += neg_coeff * tn[k];
      grad.d_negatives[n][k] = neg_coeff * u[k];
    }
  }
  return grad;
}

Matrix objective_first_gradient(const CooccurrenceGraph& g, const EmbeddingMatrix& emb) {
  Matrix grad(emb.node_count(), emb.dimension());
  for (const Edge& e : g.edges()) {
    const auto ui = emb.vertex.row(e.i);
    const auto uj = emb.vertex.row(e.j);
    const double coeff = -static_cast<double>(e.weight) * (1.0 - sigmoid(dot(ui, uj)));
    auto gi = grad.row(e.i);
    auto gj = grad.row(e.j);
    for (std::size_t k = 0; k < ui.size(); ++k) {
      gi[k] += coeff * uj[k];
      gj[k] += coeff * ui[k];
    }
  }
  return grad;
}

SecondOrderGradient objective_second_gradient(const CooccurrenceGraph& g,
                                              const EmbeddingMatrix& emb) {
  check_exact_size(g.node_count());
  const std::size_t d = emb.dimension();
  SecondOrderGradient grad{Matrix(emb.node_count(), d), Matrix(emb.node_count(), d)};

  for (NodeId i = 0; i < g.node_count(); ++i) {
    const auto nbrs = g.neighbors(i);
    if (nbrs.empty()) continue;
    const std::vector<double> q = second_order_softmax(emb, i);
    const auto u = emb.vertex.row(i);
    const double di = static_cast<double>(g.degree(i));

    // Expected context vector under the model distribution.
    std::vector<double> expected(d, 0.0);
    for (NodeId k = 0; k < emb.node_count(); ++k) {
      const auto ck = emb.context.row(k);
      for (std::size_t c = 0; c < d; ++c) expected[c] += q[k] * ck[c];
    }

    auto gv = grad.d_vertex.row(i);
    for (const Neighbor& nb : nbrs) {
      const auto cj = emb.context.row(nb.id);
      const double w = static_cast<double>(nb.weight);
      for (std::size_t c = 0; c < d; ++c) gv[c] += w * (expected[c] - cj[c]);
      auto gcj = grad.d_context.row(nb.id);
      for (std::size_t c = 0; c < d; ++c) gcj[c] -= w * u[c];
    }
    for (NodeId m = 0; m < emb.node_count(); ++m) {
      auto gcm = grad.d_context.row(m);
      const double coeff = di * q[m];
      for (std::size_t c = 0; c < d; ++c) gcm[c] += coeff * u[c];
    }
  }
  return grad;
}

}  // namespace emograph
