#pragma once

// The block set of the flag-transitive design attached to a feasible
// (chain, k): every subset of P that is uniform with the chain's
// y-sequence.  Counting, enumeration, the explicit parameter family, and
// chain collapse live here.

#include <cstdint>
#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "chaindesign/array.hpp"
#include "chaindesign/bigint.hpp"
#include "chaindesign/block.hpp"
#include "chaindesign/chain.hpp"
#include "chaindesign/feasibility.hpp"
#include "chaindesign/text.hpp"

namespace chaindesign {

inline const BigInt kDefaultEnumerationCap{10'000'000};

class cap_exceeded : public std::runtime_error {
 public:
  cap_exceeded(const std::string& what, BigInt required)
      : std::runtime_error(what), required_(std::move(required)) {}

  /// Exact size of the set that would have been produced.
  const BigInt& required() const { return required_; }

 private:
  BigInt required_;
};

/// prod_i {0, ..., y_i/y_{i-1} - 1}
inline Block canonical_block(const ChainSpec& chain, const UniformSequence& y) {
  if (auto why = UniformSequence::violation(chain, y.values())) {
    throw chain_error("invalid uniform sequence: " + *why);
  }
  std::vector<Rank> ranks{0};
  for (int i = 1; i <= chain.s(); ++i) {
    std::vector<Rank> next;
    next.reserve(ranks.size() * static_cast<std::size_t>(y.ratio(i)));
    for (std::int64_t delta = 0; delta < y.ratio(i); ++delta) {
      for (Rank r : ranks) next.push_back(r + delta * chain.class_size(i - 1));
    }
    ranks = std::move(next);
  }
  return Block::from_sorted(std::move(ranks));
}

struct UniformityFailure {
  int level = 0;
  ClassId first;
  std::int64_t first_count = 0;
  ClassId second;
  std::int64_t second_count = 0;
};

inline std::variant<UniformSequence, UniformityFailure> is_uniform(const ChainSpec& chain,
                                                                   const Block& b) {
  if (b.empty()) throw chain_error("uniformity needs a nonempty block");
  const auto a = array_of(chain, b);
  std::vector<std::int64_t> y{1};
  for (int i = 1; i <= chain.s(); ++i) {
    const auto& level = a.level(i);
    const auto [idx0, x0] = *level.begin();
    for (auto [idx, x] : level) {
      if (x != x0) {
        return UniformityFailure{i, class_from_index(chain, i, idx0), x0,
                                 class_from_index(chain, i, idx), x};
      }
    }
    y.push_back(x0);
  }
  return UniformSequence::make(chain, std::move(y));
}

/// b = prod_j C(e_j, y_j/y_{j-1})^(k/y_j)
inline BigInt block_count(const ChainSpec& chain, const UniformSequence& y) {
  if (auto why = UniformSequence::violation(chain, y.values())) {
    throw chain_error("invalid uniform sequence: " + *why);
  }
  BigInt b = 1;
  for (int j = 1; j <= chain.s(); ++j) {
    b *= power(binomial(chain.e(j), y.ratio(j)), static_cast<std::uint64_t>(y.k() / y[j]));
  }
  return b;
}

namespace detail {

/// Advances an increasing selection from {0..n-1} to its colex successor.
inline bool next_colex(std::vector<std::int64_t>& sel, std::int64_t n) {
  const auto r = sel.size();
  for (std::size_t j = 0; j < r; ++j) {
    const auto limit = j + 1 < r ? sel[j + 1] : n;
    if (sel[j] + 1 < limit) {
      ++sel[j];
      for (std::size_t t = 0; t < j; ++t) sel[t] = static_cast<std::int64_t>(t);
      return true;
    }
  }
  return false;
}

/// Uniform subsets of one level-i class from those of a level-(i-1) class:
/// pick `ratio` of the `e` subclasses (colex), then fill each picked
/// subclass independently (odometer, first picked subclass fastest).
template <class Visit>
void expand_level(const std::vector<std::vector<Rank>>& lower, std::int64_t e, std::int64_t ratio,
                  std::int64_t sub_size, Visit&& visit) {
  const auto r = static_cast<std::size_t>(ratio);
  std::vector<std::int64_t> sel(r);
  for (std::size_t j = 0; j < r; ++j) sel[j] = static_cast<std::int64_t>(j);
  std::vector<std::size_t> pick(r);
  std::vector<Rank> out;
  do {
    std::fill(pick.begin(), pick.end(), 0);
    while (true) {
      out.clear();
      for (std::size_t j = 0; j < r; ++j) {
        for (Rank x : lower[pick[j]]) out.push_back(x + sel[j] * sub_size);
      }
      visit(out);
      std::size_t j = 0;
      while (j < r && ++pick[j] == lower.size()) pick[j++] = 0;
      if (j == r) break;
    }
  } while (next_colex(sel, e));
}

}  // namespace detail

/// Calls visit(const Block&) once for every uniform subset with sequence y,
/// in a fixed order.  Throws cap_exceeded, before visiting anything, when the
/// count exceeds `cap`.
template <class Visit>
void for_each_block(const ChainSpec& chain, const UniformSequence& y, Visit&& visit,
                    const BigInt& cap = kDefaultEnumerationCap) {
  const auto b = block_count(chain, y);
  if (b > cap) {
    throw cap_exceeded("block count " + to_decimal(b) + " exceeds cap " + to_decimal(cap), b);
  }
  std::vector<std::vector<Rank>> lower{{0}};
  for (int i = 1; i < chain.s(); ++i) {
    std::vector<std::vector<Rank>> next;
    detail::expand_level(lower, chain.e(i), y.ratio(i), chain.class_size(i - 1),
                         [&](const std::vector<Rank>& blk) { next.push_back(blk); });
    lower = std::move(next);
  }
  const int s = chain.s();
  detail::expand_level(lower, chain.e(s), y.ratio(s), chain.class_size(s - 1),
                       [&](const std::vector<Rank>& blk) { visit(Block::from_sorted(blk)); });
}

inline std::vector<Block> enumerate_blocks(const ChainSpec& chain, const UniformSequence& y,
                                           const BigInt& cap = kDefaultEnumerationCap) {
  std::vector<Block> out;
  for_each_block(chain, y, [&](const Block& b) { out.push_back(b); }, cap);
  return out;
}

/// A uniformly chosen subset with sequence y: at each touched class pick
/// y_i/y_{i-1} random subclasses, then recurse into each of them.
template <class Rng>
Block random_uniform_block(const ChainSpec& chain, const UniformSequence& y, Rng& rng) {
  if (auto why = UniformSequence::violation(chain, y.values())) {
    throw chain_error("invalid uniform sequence: " + *why);
  }
  std::vector<Rank> out;
  auto fill = [&](auto&& self, int level, Rank first) -> void {
    if (level == 0) {
      out.push_back(first);
      return;
    }
    std::vector<std::int64_t> symbols(static_cast<std::size_t>(chain.e(level)));
    std::iota(symbols.begin(), symbols.end(), std::int64_t{0});
    std::shuffle(symbols.begin(), symbols.end(), rng);
    for (std::int64_t j = 0; j < y.ratio(level); ++j) {
      self(self, level - 1, first + symbols[static_cast<std::size_t>(j)] * chain.class_size(level - 1));
    }
  };
  fill(fill, chain.s(), 0);
  return Block(std::move(out));
}

struct DesignSpec {
  ChainSpec chain;
  std::int64_t k = 0;
  std::int64_t d = 0;
  std::int64_t u = 0;
  UniformSequence y;
  BigInt b;
  BigInt lambda;
  BigInt r;  // replication number
};

inline DesignSpec design_spec(const ChainSpec& chain, std::int64_t k) {
  const auto rep = check_ft(chain, k);
  if (!rep.feasible()) {
    throw infeasible_error("e=" + join(chain.radices()) + " k=" + std::to_string(k) + ": " +
                           describe(rep));
  }
  DesignSpec spec{chain, k, rep.d, *rep.u, *rep.y, {}, {}, {}};
  spec.b = block_count(chain, spec.y);
  const BigInt v = to_big(chain.v());
  const BigInt lambda_num = spec.b * k * (k - 1);
  const BigInt lambda_den = v * (v - 1);
  const BigInt r_num = spec.b * k;
  if (!divides(lambda_den, lambda_num)) throw internal_error("lambda is not an integer");
  if (!divides(v, r_num)) throw internal_error("replication number is not an integer");
  spec.lambda = lambda_num / lambda_den;
  spec.r = r_num / v;
  if (spec.lambda * (v - 1) != spec.r * (k - 1)) {
    throw internal_error("lambda(v - 1) != r(k - 1)");
  }
  return spec;
}

struct FamilyParams {
  ChainSpec chain;
  std::int64_t k = 0;
};

/// e_1 = d + 1, e_i = d + e_1 ... e_{i-1}, k = 1 + (v - 1)/d.
inline FamilyParams family_params(int s, std::int64_t d) {
  if (s < 2 || d < 2) throw chain_error("family needs s >= 2 and d >= 2");
  std::vector<std::int64_t> e;
  std::int64_t prod = 1;
  for (int i = 1; i <= s; ++i) {
    const auto ei = d + prod;  // prod = e_1 ... e_{i-1}, empty product for i = 1
    if (__builtin_mul_overflow(prod, ei, &prod) || prod > ChainSpec::kMaxPoints) {
      throw chain_error("family chain too large for s=" + std::to_string(s) +
                        " d=" + std::to_string(d));
    }
    e.push_back(ei);
  }
  ChainSpec chain(std::move(e));
  return {chain, 1 + (chain.v() - 1) / d};
}

/// The same lambda through bk/(vd); valid for family parameters, where (k-1)d = v-1.
inline BigInt family_lambda(const DesignSpec& spec) {
  const BigInt num = spec.b * spec.k;
  const BigInt den = to_big(spec.chain.v()) * spec.d;
  if (!divides(den, num)) throw internal_error("bk/(vd) is not an integer");
  return num / den;
}

struct CollapsedChain {
  ChainSpec chain;
  std::int64_t k = 0;
  FeasibilityReport report;
};

/// Drops the partition C_i (1 <= i < s): levels i and i+1 merge, so e_i and
/// e_{i+1} are replaced by their product.  Feasibility is recomputed.
inline CollapsedChain collapse_chain(const ChainSpec& chain, std::int64_t k, int drop) {
  if (chain.s() < 3) throw chain_error("collapse needs s >= 3");
  if (drop < 1 || drop >= chain.s()) {
    throw chain_error("drop index " + std::to_string(drop) + " outside [1, " +
                      std::to_string(chain.s() - 1) + "]");
  }
  if (!check_ft(chain, k).feasible()) {
    throw infeasible_error("collapse needs a feasible (chain, k)");
  }
  std::vector<std::int64_t> e;
  for (int j = 1; j <= chain.s(); ++j) {
    if (j == drop + 1) {
      e.back() *= chain.e(j);
    } else {
      e.push_back(chain.e(j));
    }
  }
  ChainSpec collapsed(std::move(e));
  return {collapsed, k, check_ft(collapsed, k)};
}

inline constexpr const char* kBlocksOmitted = "blocks=omitted(cap-exceeded)";

inline void write_design_header(std::ostream& out, const DesignSpec& spec) {
  out << "v=" << spec.chain.v() << '\n'
      << "k=" << spec.k << '\n'
      << "lambda=" << to_decimal(spec.lambda) << '\n'
      << "b=" << to_decimal(spec.b) << '\n'
      << "e=" << join(spec.chain.radices()) << '\n'
      << "y=" << join(spec.y.values()) << '\n';
}

inline void write_block(std::ostream& out, const Block& b) { out << join(b, " ") << '\n'; }

/// Design export: header, then one block per line when `enumerate` is set,
/// or the omitted marker when the block count is over `cap`.
inline void export_design(std::ostream& out, const DesignSpec& spec, bool enumerate,
                          const BigInt& cap = kDefaultEnumerationCap) {
  write_design_header(out, spec);
  if (!enumerate) return;
  if (spec.b > cap) {
    out << kBlocksOmitted << '\n';
    return;
  }
  for_each_block(spec.chain, spec.y, [&](const Block& b) { write_block(out, b); }, cap);
}

}  // namespace chaindesign
