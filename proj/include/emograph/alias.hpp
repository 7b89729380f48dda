#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "emograph/rng.hpp"

namespace emograph {

/// Walker/Vose alias table: O(n) construction, O(1) sampling from an
/// arbitrary discrete distribution given by unnormalized weights.
class AliasTable {
 public:
  /// Weights must be non-empty, non-negative, with a positive sum.
  explicit AliasTable(std::span<const double> weights);

  std::size_t sample(Rng& rng) const {
    const std::size_t k = static_cast<std::size_t>(rng.next_below(prob_.size()));
    return rng.next_double() < prob_[k] ? k : alias_[k];
  }

  std::size_t size() const noexcept { return prob_.size(); }

  /// Normalized target probability of outcome i (for diagnostics/tests).
  double probability(std::size_t i) const { return normalized_.at(i); }

 private:
  std::vector<double> prob_;
  std::vector<std::size_t> alias_;
  std::vector<double> normalized_;
};

}  // namespace emograph
