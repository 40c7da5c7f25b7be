#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "chaindesign/chain.hpp"

namespace chaindesign {

/// A set of points, held as strictly increasing ranks.
class Block {
 public:
  Block() = default;

  /// Sorts and checks for duplicates; does not check ranks against a chain.
  explicit Block(std::vector<Rank> ranks) : ranks_(std::move(ranks)) {
    std::sort(ranks_.begin(), ranks_.end());
    if (std::adjacent_find(ranks_.begin(), ranks_.end()) != ranks_.end()) {
      throw chain_error("block contains a repeated point");
    }
  }

  static Block from_sorted(std::vector<Rank> ranks) {
    Block b;
    b.ranks_ = std::move(ranks);
    return b;
  }

  std::span<const Rank> ranks() const { return ranks_; }
  std::size_t size() const { return ranks_.size(); }
  bool empty() const { return ranks_.empty(); }
  bool contains(Rank r) const { return std::binary_search(ranks_.begin(), ranks_.end(), r); }

  auto begin() const { return ranks_.begin(); }
  auto end() const { return ranks_.end(); }

  friend auto operator<=>(const Block&, const Block&) = default;
  friend bool operator==(const Block&, const Block&) = default;

 private:
  std::vector<Rank> ranks_;
};

inline void validate_block(const ChainSpec& chain, const Block& b) {
  for (Rank r : b) require_rank(chain, r);
}

/// An incident (point, block) pair.
struct Flag {
  Rank point = 0;
  Block block;

  friend auto operator<=>(const Flag&, const Flag&) = default;
  friend bool operator==(const Flag&, const Flag&) = default;
};

inline std::size_t hash_combine(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 12) + (seed >> 4));
}

}  // namespace chaindesign

template <>
struct std::hash<chaindesign::Block> {
  std::size_t operator()(const chaindesign::Block& b) const noexcept {
    std::size_t h = b.size();
    for (auto r : b) h = chaindesign::hash_combine(h, std::hash<chaindesign::Rank>{}(r));
    return h;
  }
};

template <>
struct std::hash<chaindesign::Flag> {
  std::size_t operator()(const chaindesign::Flag& f) const noexcept {
    return chaindesign::hash_combine(std::hash<chaindesign::Block>{}(f.block),
                                     std::hash<chaindesign::Rank>{}(f.point));
  }
};
