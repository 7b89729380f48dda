#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "emograph/emoji.hpp"
#include "emograph/vocabulary.hpp"

namespace emograph {

/// Undirected edge, canonicalized to i < j. Weights are message counts.
struct Edge {
  NodeId i;
  NodeId j;
  std::int64_t weight;

  bool operator==(const Edge&) const = default;
};

struct Neighbor {
  NodeId id;
  std::int64_t weight;
};

/// Weighted undirected emoji co-occurrence graph. Immutable once built;
/// caches the total weight W and per-node weighted degrees d_i alongside
/// the edge list and adjacency.
class CooccurrenceGraph {
 public:
  const Vocabulary& vocabulary() const noexcept { return vocab_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Neighbor> neighbors(NodeId id) const { return adjacency_.at(id); }

  std::size_t node_count() const noexcept { return vocab_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// W = Σ_{(i,j)∈E} w_ij
  std::int64_t total_weight() const noexcept { return total_weight_; }

  /// Weighted degree d_i = Σ_{k∈N(i)} w_ik
  std::int64_t degree(NodeId id) const { return degrees_.at(id); }

  bool has_edge(NodeId a, NodeId b) const;

  /// Weight of the undirected edge {a,b}; throws EdgeNotFound.
  std::int64_t edge_weight(NodeId a, NodeId b) const;

  static CooccurrenceGraph from_parts(Vocabulary vocab, std::vector<Edge> edges);

 private:
  CooccurrenceGraph() = default;

  Vocabulary vocab_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<std::int64_t> degrees_;
  std::int64_t total_weight_ = 0;
  std::map<std::pair<NodeId, NodeId>, std::int64_t> weight_index_;
};

/// Accumulates message cliques: the distinct emoji of each message form a
/// complete subgraph and every distinct unordered pair gains weight 1 per
/// message, regardless of repetitions within the message. Self-loops never
/// arise because pairs are taken over the distinct set.
class GraphBuilder {
 public:
  void add_message(const MessageEmojiList& message);
  std::size_t messages_added() const noexcept { return messages_added_; }

  /// Throws EmptyCorpus when no message contributed an edge.
  CooccurrenceGraph build();

 private:
  Vocabulary vocab_;
  std::map<std::pair<NodeId, NodeId>, std::int64_t> counts_;
  std::size_t messages_added_ = 0;
};

CooccurrenceGraph build_graph(std::span<const MessageEmojiList> messages);

/// p̃1(i,j) = w_ij / W. Throws EdgeNotFound when {i,j} ∉ E.
double empirical_first_order(const CooccurrenceGraph& g, NodeId i, NodeId j);

/// p̃2(j|i) = w_ij / d_i. Throws EdgeNotFound when j ∉ N(i).
double empirical_second_order(const CooccurrenceGraph& g, NodeId center, NodeId context);

/// Text format: header "|V| |E|", then |V| lines "id<TAB>token", then |E|
/// lines "i<TAB>j<TAB>w" with i < j.
void save_graph(const CooccurrenceGraph& g, const std::filesystem::path& path);
CooccurrenceGraph load_graph(const std::filesystem::path& path);

}  // namespace emograph
