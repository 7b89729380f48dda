#include "emograph/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "emograph/errors.hpp"

namespace emograph {

namespace {

std::pair<NodeId, NodeId> ordered(NodeId a, NodeId b) {
  return a < b ? std::pair{a, b} : std::pair{b, a};
}

}  // namespace

bool CooccurrenceGraph::has_edge(NodeId a, NodeId b) const {
  return weight_index_.count(ordered(a, b)) != 0;
}

std::int64_t CooccurrenceGraph::edge_weight(NodeId a, NodeId b) const {
  auto it = weight_index_.find(ordered(a, b));
  if (it == weight_index_.end()) {
    throw EdgeNotFound("no edge between node " + std::to_string(a) + " and node " +
                       std::to_string(b));
  }
  return it->second;
}

CooccurrenceGraph CooccurrenceGraph::from_parts(Vocabulary vocab, std::vector<Edge> edges) {
  CooccurrenceGraph g;
  g.vocab_ = std::move(vocab);
  g.edges_ = std::move(edges);
  std::sort(g.edges_.begin(), g.edges_.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });

  const std::size_t n = g.vocab_.size();
  g.adjacency_.assign(n, {});
  g.degrees_.assign(n, 0);
  for (const Edge& e : g.edges_) {
    if (e.i == e.j) throw FormatError("self-loop on node " + std::to_string(e.i));
    if (e.i >= n || e.j >= n) throw FormatError("edge endpoint out of vocabulary range");
    if (e.weight <= 0) throw FormatError("non-positive edge weight");
    if (!g.weight_index_.emplace(std::pair{e.i, e.j}, e.weight).second) {
      throw FormatError("duplicate edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) + ")");
    }
    g.adjacency_[e.i].push_back({e.j, e.weight});
    g.adjacency_[e.j].push_back({e.i, e.weight});
    g.degrees_[e.i] += e.weight;
    g.degrees_[e.j] += e.weight;
    g.total_weight_ += e.weight;
  }
  for (auto& nbrs : g.adjacency_) {
    std::sort(nbrs.begin(), nbrs.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
  }
  return g;
}

void GraphBuilder::add_message(const MessageEmojiList& message) {
  ++messages_added_;
  // Distinct tokens in first-occurrence order, so vocabulary ids are
  // deterministic for a given corpus.
  std::vector<NodeId> distinct;
  for (const EmojiToken& token : message.tokens) {
    const NodeId id = vocab_.add(token.serialize());
    if (std::find(distinct.begin(), distinct.end(), id) == distinct.end()) {
      distinct.push_back(id);
    }
  }
  for (std::size_t a = 0; a < distinct.size(); ++a) {
    for (std::size_t b = a + 1; b < distinct.size(); ++b) {
      counts_[ordered(distinct[a], distinct[b])] += 1;
    }
  }
}

CooccurrenceGraph GraphBuilder::build() {
  if (counts_.empty()) throw EmptyCorpus();
  std::vector<Edge> edges;
  edges.reserve(counts_.size());
  for (const auto& [pair, weight] : counts_) {
    edges.push_back({pair.first, pair.second, weight});
  }
  return CooccurrenceGraph::from_parts(std::move(vocab_), std::move(edges));
}

CooccurrenceGraph build_graph(std::span<const MessageEmojiList> messages) {
  GraphBuilder builder;
  for (const MessageEmojiList& message : messages) builder.add_message(message);
  return builder.build();
}

double empirical_first_order(const CooccurrenceGraph& g, NodeId i, NodeId j) {
  return static_cast<double>(g.edge_weight(i, j)) / static_cast<double>(g.total_weight());
}

double empirical_second_order(const CooccurrenceGraph& g, NodeId center, NodeId context) {
  return static_cast<double>(g.edge_weight(center, context)) /
         static_cast<double>(g.degree(center));
}

void save_graph(const CooccurrenceGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out.is_open()) throw IoError("cannot open for writing: " + path.string());
  out << g.node_count() << ' ' << g.edge_count() << '\n';
  for (NodeId id = 0; id < g.node_count(); ++id) {
    out << id << '\t' << g.vocabulary().token(id) << '\n';
  }
  for (const Edge& e : g.edges()) {
    out << e.i << '\t' << e.j << '\t' << e.weight << '\n';
  }
  if (!out.good()) throw IoError("write failed: " + path.string());
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (true) {
    const std::size_t tab = line.find('\t', pos);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
  return fields;
}

std::int64_t parse_int(const std::string& s, std::size_t line_no) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw FormatError("expected integer, got \"" + s + "\"", line_no);
  }
  return value;
}

}  // namespace

CooccurrenceGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open()) throw FileNotFound(path.string());

  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> std::string& {
    if (!std::getline(in, line)) throw FormatError("unexpected end of graph file", line_no);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  };

  std::istringstream header(next_line());
  std::size_t n_nodes = 0, n_edges = 0;
  if (!(header >> n_nodes >> n_edges)) throw FormatError("bad header", line_no);

  Vocabulary vocab;
  for (std::size_t k = 0; k < n_nodes; ++k) {
    const auto fields = split_tabs(next_line());
    if (fields.size() != 2) throw FormatError("expected \"id<TAB>token\"", line_no);
    const std::int64_t id = parse_int(fields[0], line_no);
    if (id != static_cast<std::int64_t>(k)) {
      throw FormatError("vocabulary ids must be contiguous from 0", line_no);
    }
    EmojiToken::parse(fields[1]);  // validates the serialization
    if (vocab.add(fields[1]) != k) throw FormatError("duplicate token in vocabulary", line_no);
  }

  std::vector<Edge> edges;
  edges.reserve(n_edges);
  for (std::size_t k = 0; k < n_edges; ++k) {
    const auto fields = split_tabs(next_line());
    if (fields.size() != 3) throw FormatError("expected \"i<TAB>j<TAB>w\"", line_no);
    const std::int64_t i = parse_int(fields[0], line_no);
    const std::int64_t j = parse_int(fields[1], line_no);
    const std::int64_t w = parse_int(fields[2], line_no);
    if (i < 0 || j < 0 || i >= static_cast<std::int64_t>(n_nodes) ||
        j >= static_cast<std::int64_t>(n_nodes)) {
      throw FormatError("edge endpoint out of range", line_no);
    }
    if (i >= j) throw FormatError("edges must satisfy i < j", line_no);
    if (w <= 0) throw FormatError("edge weight must be positive", line_no);
    edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), w});
  }

  if (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) throw FormatError("trailing content after declared edges", line_no);
  }

  try {
    return CooccurrenceGraph::from_parts(std::move(vocab), std::move(edges));
  } catch (const FormatError& e) {
    throw FormatError(std::string("invalid graph file: ") + e.what());
  }
}

}  // namespace emograph
