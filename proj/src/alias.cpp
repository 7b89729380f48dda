#include "emograph/alias.hpp"

#include "emograph/errors.hpp"

namespace emograph {

AliasTable::AliasTable(std::span<const double> weights) {
  const std::size_t n = weights.size();
  if (n == 0) throw ConfigInvalid("alias table needs at least one outcome");

  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw ConfigInvalid("alias table weights must be non-negative");
    sum += w;
  }
  if (sum <= 0.0) throw ConfigInvalid("alias table weights must have positive sum");

  normalized_.resize(n);
  std::vector<double> scaled(n);
  for (std::size_t k = 0; k < n; ++k) {
    normalized_[k] = weights[k] / sum;
    scaled[k] = normalized_[k] * static_cast<double>(n);
  }

  prob_.assign(n, 1.0);
  alias_.resize(n);
  for (std::size_t k = 0; k < n; ++k) alias_[k] = k;

  std::vector<std::size_t> small, large;
  small.reserve(n);
  large.reserve(n);
  for (std::size_t k = n; k-- > 0;) {
    (scaled[k] < 1.0 ? small : large).push_back(k);
  }

  while (!small.empty() && !large.empty()) {
    const std::size_t s = small.back();
    small.pop_back();
    const std::size_t l = large.back();
    large.pop_back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    // Donate mass from the large outcome and requeue it.
    scaled[l] += scaled[s] - 1.0;
    (scaled[l] < 1.0 ? small : large).push_back(l);
  }
  // Leftovers are 1.0 up to rounding.
  while (!large.empty()) {
    prob_[large.back()] = 1.0;
    large.pop_back();
  }
  while (!small.empty()) {
    prob_[small.back()] = 1.0;
    small.pop_back();
  }
}

}  // namespace emograph
