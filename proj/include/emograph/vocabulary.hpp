#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "emograph/errors.hpp"

namespace emograph {

using NodeId = std::uint32_t;

/// Bijective map between token serializations and dense node ids 0..|V|-1.
/// Ids are assigned in first-insertion order.
class Vocabulary {
 public:
  NodeId add(const std::string& token) {
    auto [it, inserted] = index_.try_emplace(token, static_cast<NodeId>(tokens_.size()));
    if (inserted) tokens_.push_back(token);
    return it->second;
  }

  std::optional<NodeId> find(const std::string& token) const {
    auto it = index_.find(token);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& token(NodeId id) const {
    if (id >= tokens_.size()) throw Error("node id out of range");
    return tokens_[id];
  }

  std::size_t size() const noexcept { return tokens_.size(); }
  bool empty() const noexcept { return tokens_.empty(); }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, NodeId> index_;
};

}  // namespace emograph
