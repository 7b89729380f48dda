#include "emograph/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "emograph/errors.hpp"
#include "emograph/model.hpp"
#include "emograph/rng.hpp"

namespace emograph {

namespace {

constexpr double kLrFloorFraction = 1e-4;  // final lr = initial / 10000
constexpr int kMaxNegativeResamples = 100;
constexpr double kRmsPropDecay = 0.9;
constexpr double kRmsPropEpsilon = 1e-6;

double learning_rate_for_batch(const TrainingConfig& cfg, std::size_t batch) {
  if (cfg.lr_schedule == LrSchedule::Constant) return cfg.initial_learning_rate;
  const double progress = static_cast<double>(batch) / static_cast<double>(cfg.total_batches);
  return cfg.initial_learning_rate * (1.0 - (1.0 - kLrFloorFraction) * progress);
}

// Optional per-parameter mean-square state for RMSProp.
struct RmsPropState {
  Matrix vertex;
  Matrix context;

  RmsPropState(std::size_t nodes, std::size_t dim, bool with_context)
      : vertex(nodes, dim), context(with_context ? nodes : 0, with_context ? dim : 0) {}
};

}  // namespace

void TrainingConfig::validate() const {
  if (dimension < 1) throw ConfigInvalid("dimension must be >= 1");
  if (!(initial_learning_rate > 0.0)) throw ConfigInvalid("learning rate must be > 0");
  if (batch_size < 1) throw ConfigInvalid("batch size must be >= 1");
  if (total_batches < 1) throw ConfigInvalid("total batches must be >= 1");
  if (negatives < 1) throw ConfigInvalid("negative sample count must be >= 1");
  if (!(noise_exponent >= 0.0)) throw ConfigInvalid("noise exponent must be >= 0");
}

AliasTable build_edge_sampler(const CooccurrenceGraph& g) {
  if (g.edge_count() == 0) throw EmptyGraph();
  std::vector<double> weights;
  weights.reserve(g.edge_count());
  for (const Edge& e : g.edges()) weights.push_back(static_cast<double>(e.weight));
  return AliasTable(weights);
}

AliasTable build_noise_distribution(const CooccurrenceGraph& g, double exponent) {
  if (g.edge_count() == 0) throw EmptyGraph();
  std::vector<double> mass(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    mass[v] = std::pow(static_cast<double>(g.degree(v)), exponent);
  }
  return AliasTable(mass);
}

EmbeddingMatrix initialize_embeddings(std::size_t nodes, const TrainingConfig& config) {
  Rng rng(config.seed);
  EmbeddingMatrix emb(nodes, config.dimension, config.order == Order::Second);
  const double scale = 1.0 / static_cast<double>(config.dimension);
  for (double& v : emb.vertex.flat()) v = (rng.next_double() - 0.5) * scale;
  for (double& v : emb.context.flat()) v = (rng.next_double() - 0.5) * scale;
  return emb;
}

EmbeddingMatrix train(const CooccurrenceGraph& g, const TrainingConfig& config,
                      TrainStats* stats,
                      const std::function<void(std::size_t, const EmbeddingMatrix&)>& on_batch) {
  config.validate();
  if (g.edge_count() == 0) throw EmptyGraph();

  // One RNG drives init and sampling, in that order, so a seed pins the
  // whole run.
  Rng rng(config.seed);
  EmbeddingMatrix emb(g.node_count(), config.dimension, config.order == Order::Second);
  const double scale = 1.0 / static_cast<double>(config.dimension);
  for (double& v : emb.vertex.flat()) v = (rng.next_double() - 0.5) * scale;
  for (double& v : emb.context.flat()) v = (rng.next_double() - 0.5) * scale;

  const AliasTable edge_sampler = build_edge_sampler(g);
  const AliasTable noise = build_noise_distribution(g, config.noise_exponent);
  const bool second = config.order == Order::Second;
  Matrix& targets = second ? emb.context : emb.vertex;

  std::optional<RmsPropState> rms;
  if (config.optimizer == Optimizer::RmsProp) {
    rms.emplace(g.node_count(), config.dimension, second);
  }

  const std::size_t d = config.dimension;
  const auto edges = g.edges();
  std::vector<double> center_accum(d);
  TrainStats local_stats;

  // Applies a gradient-ascent step of magnitude `g_scale` along `direction`
  // to one parameter row; `ms` selects the RMSProp accumulator matrix.
  auto apply = [&](std::span<double> row, Matrix* ms, std::size_t ms_row_id, double g_scale,
                   std::span<const double> direction, double lr) {
    if (!ms) {
      for (std::size_t c = 0; c < d; ++c) row[c] += lr * g_scale * direction[c];
      return;
    }
    auto ms_row = ms->row(ms_row_id);
    for (std::size_t c = 0; c < d; ++c) {
      const double grad = g_scale * direction[c];
      ms_row[c] = kRmsPropDecay * ms_row[c] + (1.0 - kRmsPropDecay) * grad * grad;
      row[c] += lr * grad / (std::sqrt(ms_row[c]) + kRmsPropEpsilon);
    }
  };
  Matrix* target_ms = rms ? (second ? &rms->context : &rms->vertex) : nullptr;
  Matrix* vertex_ms = rms ? &rms->vertex : nullptr;

  for (std::size_t batch = 0; batch < config.total_batches; ++batch) {
    const double lr = learning_rate_for_batch(config, batch);
    for (std::size_t step = 0; step < config.batch_size; ++step) {
      const Edge& e = edges[edge_sampler.sample(rng)];
      // Orient the undirected edge; over many draws each direction carries
      // half the edge mass, matching the directed expansion of the
      // second-order objective and treating first-order endpoints
      // symmetrically.
      const bool flip = rng.next_double() < 0.5;
      const NodeId center = flip ? e.j : e.i;
      const NodeId context = flip ? e.i : e.j;

      auto u = emb.vertex.row(center);
      std::fill(center_accum.begin(), center_accum.end(), 0.0);

      for (std::size_t s = 0; s <= config.negatives; ++s) {
        NodeId target_id;
        double label;
        if (s == 0) {
          target_id = context;
          label = 1.0;
        } else {
          // A draw equal to the positive context or the center is a
          // collision. Self-negatives shrink the center vector and make
          // tiny graphs collapse to p = 0.5, so both are rejected.
          int attempts = 0;
          NodeId draw;
          do {
            draw = static_cast<NodeId>(noise.sample(rng));
            ++attempts;
          } while ((draw == context || draw == center) && attempts < kMaxNegativeResamples);
          if (draw == context || draw == center) {
            ++local_stats.skipped_negatives;
            continue;
          }
          target_id = draw;
          label = 0.0;
        }

        auto t = targets.row(target_id);
        double x = 0.0;
        for (std::size_t c = 0; c < d; ++c) x += u[c] * t[c];
        const double g_scale = label - sigmoid(x);

        // Center gradient accumulates over the positive and all negatives;
        // target rows are updated immediately.
        for (std::size_t c = 0; c < d; ++c) center_accum[c] += g_scale * t[c];
        apply(t, target_ms, target_id, g_scale, u, lr);
      }
      apply(u, vertex_ms, center, 1.0, center_accum, lr);
    }
    if (on_batch) on_batch(batch, emb);
  }

  if (!emb.vertex.all_finite() || !emb.context.all_finite()) {
    throw Error("training produced non-finite embeddings");
  }
  if (stats) *stats = local_stats;
  return emb;
}

EmbeddingMatrix train_exact(const CooccurrenceGraph& g, const TrainingConfig& config,
                            std::vector<double>* objective_trace) {
  // total_batches doubles as the iteration count here and zero iterations is
  // meaningful (return the initialization), so it is exempt from validation.
  TrainingConfig check = config;
  check.total_batches = std::max<std::size_t>(config.total_batches, 1);
  check.validate();
  if (g.edge_count() == 0) throw EmptyGraph();
  if (g.node_count() > kExactTrainerMaxNodes) {
    throw VocabularyTooLarge("exact trainer limited to " +
                             std::to_string(kExactTrainerMaxNodes) + " nodes, got " +
                             std::to_string(g.node_count()));
  }

  EmbeddingMatrix emb = initialize_embeddings(g.node_count(), config);
  const bool second = config.order == Order::Second;

  auto objective = [&]() {
    return second ? objective_second(g, emb) : objective_first(g, emb);
  };
  if (objective_trace) objective_trace->push_back(objective());

  for (std::size_t iter = 0; iter < config.total_batches; ++iter) {
    const double lr = learning_rate_for_batch(config, iter);
    if (second) {
      const SecondOrderGradient grad = objective_second_gradient(g, emb);
      auto v = emb.vertex.flat();
      auto gv = grad.d_vertex.flat();
      for (std::size_t k = 0; k < v.size(); ++k) v[k] -= lr * gv[k];
      auto c = emb.context.flat();
      auto gc = grad.d_context.flat();
      for (std::size_t k = 0; k < c.size(); ++k) c[k] -= lr * gc[k];
    } else {
      const Matrix grad = objective_first_gradient(g, emb);
      auto v = emb.vertex.flat();
      auto gv = grad.flat();
      for (std::size_t k = 0; k < v.size(); ++k) v[k] -= lr * gv[k];
    }
    if (objective_trace) objective_trace->push_back(objective());
  }

  if (!emb.vertex.all_finite() || !emb.context.all_finite()) {
    throw Error("training produced non-finite embeddings");
  }
  return emb;
}

}  // namespace emograph
