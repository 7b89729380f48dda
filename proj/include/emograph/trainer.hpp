#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "emograph/alias.hpp"
#include "emograph/embedding.hpp"
#include "emograph/graph.hpp"

namespace emograph {

enum class LrSchedule { LinearDecay, Constant };
enum class Optimizer { Sgd, RmsProp };

struct TrainingConfig {
  std::size_t dimension = 300;
  double initial_learning_rate = 0.025;
  std::size_t batch_size = 128;
  std::size_t total_batches = 300'000;
  std::size_t negatives = 5;       // K
  double noise_exponent = 0.75;    // noise mass is d_v^noise_exponent
  Order order = Order::First;
  std::uint64_t seed = 42;
  LrSchedule lr_schedule = LrSchedule::LinearDecay;
  Optimizer optimizer = Optimizer::Sgd;

  /// Throws ConfigInvalid when a field is out of range.
  void validate() const;
};

struct TrainStats {
  /// Negative draws abandoned after colliding with the positive context
  /// 100 times in a row.
  std::uint64_t skipped_negatives = 0;
};

/// Alias sampler over edges, probability w_e / W. Throws EmptyGraph.
AliasTable build_edge_sampler(const CooccurrenceGraph& g);

/// Noise distribution P_n(v) ∝ d_v^exponent over all nodes.
AliasTable build_noise_distribution(const CooccurrenceGraph& g, double exponent);

/// Seeded uniform init in [−0.5/d, +0.5/d] per coordinate; vertex matrix
/// first, then the context matrix when `order` is Second. Both trainers
/// start from this state, so exact and sampled runs are comparable.
EmbeddingMatrix initialize_embeddings(std::size_t nodes, const TrainingConfig& config);

/// Edge-sampling SGD with negative sampling. Each batch draws batch_size
/// edges (∝ w), orients each one uniformly, and applies per-edge updates
/// sequentially; the batch is the learning-rate bookkeeping unit. The
/// learning rate decays linearly to 1/10000 of its initial value unless the
/// schedule is Constant. Single-threaded and bit-reproducible for a fixed
/// seed. `on_batch`, when set, is called after every batch.
EmbeddingMatrix train(const CooccurrenceGraph& g, const TrainingConfig& config,
                      TrainStats* stats = nullptr,
                      const std::function<void(std::size_t, const EmbeddingMatrix&)>& on_batch = {});

/// Full-gradient descent on the exact objective (no sampling), for
/// small-graph verification; total_batches is reused as the iteration
/// count. Requires |V| ≤ 200. When `objective_trace` is given it receives
/// the objective before training and after every iteration.
EmbeddingMatrix train_exact(const CooccurrenceGraph& g, const TrainingConfig& config,
                            std::vector<double>* objective_trace = nullptr);

inline constexpr std::size_t kExactTrainerMaxNodes = 200;

}  // namespace emograph
