#pragma once

// Array functions: chi_B(C) = |B ∩ C| for every class C of levels 1..s.

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "chaindesign/block.hpp"
#include "chaindesign/chain.hpp"
#include "chaindesign/permutation.hpp"

namespace chaindesign {

/// Sparse: classes missing from a level's map have value 0.
class ArrayFunction {
 public:
  using LevelMap = std::map<std::int64_t, std::int64_t>;  // class index -> value

  ArrayFunction() = default;
  explicit ArrayFunction(ChainSpec chain)
      : chain_(std::move(chain)), levels_(static_cast<std::size_t>(chain_.s()) + 1) {}

  const ChainSpec& chain() const { return chain_; }

  std::int64_t value(int level, std::int64_t class_idx) const {
    const auto& m = levels_.at(static_cast<std::size_t>(level));
    auto it = m.find(class_idx);
    return it == m.end() ? 0 : it->second;
  }

  std::int64_t value(const ClassId& c) const {
    validate_class(chain_, c);
    return value(c.level, class_index(chain_, c));
  }

  /// Nonzero entries of one level, by class index.
  const LevelMap& level(int i) const { return levels_.at(static_cast<std::size_t>(i)); }

  void add(int level, std::int64_t class_idx, std::int64_t amount) {
    auto& slot = levels_.at(static_cast<std::size_t>(level))[class_idx];
    slot += amount;
    if (slot == 0) levels_[static_cast<std::size_t>(level)].erase(class_idx);
  }

  /// Value at the top class and sum over subclasses at every level >= 2.
  bool is_consistent() const {
    for (int i = 2; i <= chain_.s(); ++i) {
      LevelMap sums;
      for (auto [idx, x] : level(i - 1)) sums[idx / chain_.e(i)] += x;
      if (sums != level(i)) return false;
    }
    return true;
  }

  friend bool operator==(const ArrayFunction&, const ArrayFunction&) = default;

 private:
  ChainSpec chain_;
  std::vector<LevelMap> levels_;  // index 0 unused
};

inline ArrayFunction array_of(const ChainSpec& chain, std::span<const Rank> points) {
  ArrayFunction a(chain);
  for (Rank r : points) {
    require_rank(chain, r);
    for (int i = 1; i <= chain.s(); ++i) a.add(i, class_index(chain, r, i), 1);
  }
  return a;
}

inline ArrayFunction array_of(const ChainSpec& chain, const Block& b) {
  return array_of(chain, b.ranks());
}

/// C_i(B): the level-i classes that meet B.
inline std::set<ClassId> classes_meeting(const ChainSpec& chain, std::span<const Rank> points,
                                         int level) {
  require_level(chain, level, 1);
  std::set<std::int64_t> idx;
  for (Rank r : points) {
    require_rank(chain, r);
    idx.insert(class_index(chain, r, level));
  }
  std::set<ClassId> out;
  for (auto i : idx) out.insert(class_from_index(chain, level, i));
  return out;
}

/// chi^g(C) = chi(C^{g^-1}): the value carried by C moves to the image of C.
inline ArrayFunction permute_array(const ArrayFunction& a, const ChainPermutation& g) {
  const auto& chain = a.chain();
  if (!(g.chain() == chain)) throw chain_error("permutation and array use different chains");
  ArrayFunction out(chain);
  for (int i = 1; i <= chain.s(); ++i) {
    const auto size = chain.class_size(i);
    for (auto [idx, x] : a.level(i)) {
      const auto target = class_index(chain, g(idx * size), i);
      // every point of the class must land in the same image class
      for (Rank r = idx * size; r < (idx + 1) * size; ++r) {
        if (class_index(chain, g(r), i) != target) {
          throw chain_error("class " + format_class(class_from_index(chain, i, idx)) +
                            " is not mapped onto a class");
        }
      }
      out.add(i, target, x);
    }
  }
  return out;
}

}  // namespace chaindesign
