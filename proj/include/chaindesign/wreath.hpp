#pragma once

// The chain stabiliser W = S_{e1} wr ... wr S_{es} acting on P, as explicit
// permutations, and breadth-first orbits under it.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <random>
#include <unordered_set>
#include <vector>

#include "chaindesign/bigint.hpp"
#include "chaindesign/block.hpp"
#include "chaindesign/chain.hpp"
#include "chaindesign/design.hpp"
#include "chaindesign/permutation.hpp"

namespace chaindesign {

struct GeneratorSet {
  ChainSpec chain;
  std::vector<ChainPermutation> gens;
};

/// An element of W given by its labels: for each level i and each level-i
/// class C, a permutation of Z_{e_i} applied to delta_i of the points of C.
/// Labels are indexed by the class a point starts in.
class WreathElement {
 public:
  explicit WreathElement(ChainSpec chain) : chain_(std::move(chain)) {
    for (int i = 1; i <= chain_.s(); ++i) {
      std::vector<std::int64_t> lab(static_cast<std::size_t>(chain_.class_count(i) * chain_.e(i)));
      for (std::size_t t = 0; t < lab.size(); ++t) lab[t] = static_cast<std::int64_t>(t) % chain_.e(i);
      labels_.push_back(std::move(lab));
    }
  }

  static WreathElement random(const ChainSpec& chain, std::mt19937_64& rng) {
    WreathElement w(chain);
    for (int i = 1; i <= chain.s(); ++i) {
      for (std::int64_t c = 0; c < chain.class_count(i); ++c) {
        auto* first = w.label_data(i, c);
        std::shuffle(first, first + chain.e(i), rng);
      }
    }
    return w;
  }

  /// Label of the level-i class with index `class_idx`; writable.
  std::int64_t* label_data(int level, std::int64_t class_idx) {
    return labels_[static_cast<std::size_t>(level - 1)].data() + class_idx * chain_.e(level);
  }

  Rank image(Rank r) const {
    Rank out = 0;
    for (int i = chain_.s(); i >= 1; --i) {
      const auto cls = r / chain_.class_size(i);
      const auto delta = coordinate(chain_, r, i);
      const auto mapped =
          labels_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(cls * chain_.e(i) + delta)];
      out = out * chain_.e(i) + mapped;
    }
    return out;
  }

  ChainPermutation to_permutation() const {
    std::vector<Rank> images(static_cast<std::size_t>(chain_.v()));
    for (Rank r = 0; r < chain_.v(); ++r) images[static_cast<std::size_t>(r)] = image(r);
    return ChainPermutation::from_images(chain_, std::move(images));
  }

 private:
  ChainSpec chain_;
  std::vector<std::vector<std::int64_t>> labels_;
};

inline ChainPermutation random_chain_permutation(const ChainSpec& chain, std::mt19937_64& rng) {
  return WreathElement::random(chain, rng).to_permutation();
}

namespace detail {

/// Permutes delta_level of the points in the first level-`level` class
/// (all higher coordinates zero) whose delta_level is below `width`;
/// `step` maps a symbol in [0, width) to its image.
template <class Step>
ChainPermutation first_class_permutation(const ChainSpec& chain, int level, std::int64_t width,
                                         Step step) {
  std::vector<Rank> images(static_cast<std::size_t>(chain.v()));
  const auto sub = chain.class_size(level - 1);
  for (Rank r = 0; r < chain.v(); ++r) {
    Rank img = r;
    if (r < chain.class_size(level)) {
      const auto delta = coordinate(chain, r, level);
      if (delta < width) img = r + (step(delta) - delta) * sub;
    }
    images[static_cast<std::size_t>(r)] = img;
  }
  return ChainPermutation::from_images(chain, std::move(images));
}

inline std::vector<ChainPermutation> symmetric_generators(const ChainSpec& chain, int level,
                                                          std::int64_t width) {
  return {
      first_class_permutation(chain, level, width,
                              [](std::int64_t x) { return x < 2 ? 1 - x : x; }),
      first_class_permutation(chain, level, width,
                              [width](std::int64_t x) { return (x + 1) % width; }),
  };
}

}  // namespace detail

/// Per level i: a transposition and an e_i-cycle on delta_i, supported on
/// the first level-i class.  2s generators in all.
inline GeneratorSet wreath_generators(const ChainSpec& chain) {
  GeneratorSet out{chain, {}};
  for (int i = 1; i <= chain.s(); ++i) {
    for (auto& g : detail::symmetric_generators(chain, i, chain.e(i))) out.gens.push_back(std::move(g));
  }
  return out;
}

/// prod_i (e_i!)^{number of level-i classes}
inline BigInt wreath_order(const ChainSpec& chain) {
  BigInt order = 1;
  for (int i = 1; i <= chain.s(); ++i) {
    BigInt fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(chain.e(i)));
    order *= power(fact, static_cast<std::uint64_t>(chain.class_count(i)));
  }
  return order;
}

/// Order of the group generated by `gens`, from a base and strong generating
/// set built by plain Schreier-Sims.  Meant for small point sets.
inline BigInt group_order(const std::vector<ChainPermutation>& gens) {
  using Perm = std::vector<Rank>;
  if (gens.empty()) return 1;
  const auto n = gens.front().images().size();

  auto compose = [](const Perm& a, const Perm& b) {  // a then b
    Perm out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = b[static_cast<std::size_t>(a[i])];
    return out;
  };
  auto invert = [](const Perm& a) {
    Perm out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[static_cast<std::size_t>(a[i])] = static_cast<Rank>(i);
    return out;
  };
  auto first_moved = [](const Perm& a) -> std::optional<Rank> {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != static_cast<Rank>(i)) return static_cast<Rank>(i);
    }
    return std::nullopt;
  };

  std::vector<Rank> base;
  std::vector<Perm> strong;
  for (const auto& g : gens) {
    Perm p(g.images().begin(), g.images().end());
    if (first_moved(p)) strong.push_back(std::move(p));
  }
  if (strong.empty()) return 1;

  struct Level {
    std::vector<std::optional<Perm>> transversal;  // u_p with base^u_p = p
    std::vector<Rank> orbit;
    std::vector<const Perm*> gens;
  };

  while (true) {
    for (const auto& s : strong) {
      const bool fixes_base =
          std::all_of(base.begin(), base.end(), [&](Rank b) { return s[static_cast<std::size_t>(b)] == b; });
      if (fixes_base) base.push_back(*first_moved(s));
    }

    std::vector<Level> levels(base.size());
    for (std::size_t j = 0; j < base.size(); ++j) {
      auto& lv = levels[j];
      for (const auto& s : strong) {
        bool fixes = true;
        for (std::size_t t = 0; t < j; ++t) fixes = fixes && s[static_cast<std::size_t>(base[t])] == base[t];
        if (fixes) lv.gens.push_back(&s);
      }
      lv.transversal.assign(n, std::nullopt);
      Perm id(n);
      std::iota(id.begin(), id.end(), Rank{0});
      lv.transversal[static_cast<std::size_t>(base[j])] = id;
      lv.orbit.push_back(base[j]);
      for (std::size_t q = 0; q < lv.orbit.size(); ++q) {
        const auto p = lv.orbit[q];
        for (const auto* s : lv.gens) {
          const auto img = (*s)[static_cast<std::size_t>(p)];
          if (!lv.transversal[static_cast<std::size_t>(img)]) {
            lv.transversal[static_cast<std::size_t>(img)] =
                compose(*lv.transversal[static_cast<std::size_t>(p)], *s);
            lv.orbit.push_back(img);
          }
        }
      }
    }

    auto sift = [&](Perm h) -> std::pair<Perm, std::size_t> {
      for (std::size_t j = 0; j < levels.size(); ++j) {
        const auto p = h[static_cast<std::size_t>(base[j])];
        const auto& u = levels[j].transversal[static_cast<std::size_t>(p)];
        if (!u) return {h, j};
        h = compose(h, invert(*u));
      }
      return {h, levels.size()};
    };

    std::optional<Perm> residue;
    for (std::size_t j = 0; j < levels.size() && !residue; ++j) {
      const auto& lv = levels[j];
      for (auto p : lv.orbit) {
        for (const auto* s : lv.gens) {
          const auto& up = *lv.transversal[static_cast<std::size_t>(p)];
          const auto& ups = *lv.transversal[static_cast<std::size_t>((*s)[static_cast<std::size_t>(p)])];
          auto [h, depth] = sift(compose(compose(up, *s), invert(ups)));
          if (first_moved(h)) {
            residue = std::move(h);
            break;
          }
        }
        if (residue) break;
      }
    }
    if (!residue) {
      BigInt order = 1;
      for (const auto& lv : levels) order *= static_cast<unsigned long>(lv.orbit.size());
      return order;
    }
    strong.push_back(std::move(*residue));
  }
}

inline Rank act(const ChainPermutation& g, Rank r) { return g(r); }
inline Block act(const ChainPermutation& g, const Block& b) { return g.apply(b); }
inline Flag act(const ChainPermutation& g, const Flag& f) { return {g(f.point), g.apply(f.block)}; }

template <class T>
struct OrbitResult {
  std::vector<T> elements;  // breadth-first discovery order
  bool complete = false;    // false: stopped at the cap, `elements` is partial
};

/// Closure of `seed` under the generators.  Stops once more than `cap`
/// elements have been found.
template <class T>
OrbitResult<T> orbit(const T& seed, const std::vector<ChainPermutation>& gens, std::size_t cap) {
  OrbitResult<T> out;
  std::unordered_set<T> seen{seed};
  out.elements.push_back(seed);
  for (std::size_t q = 0; q < out.elements.size(); ++q) {
    for (const auto& g : gens) {
      T next = act(g, out.elements[q]);
      if (seen.insert(next).second) {
        if (out.elements.size() >= cap) return out;
        out.elements.push_back(std::move(next));
      }
    }
  }
  out.complete = true;
  return out;
}

template <class T>
OrbitResult<T> orbit(const T& seed, const GeneratorSet& gens, std::size_t cap) {
  return orbit(seed, gens.gens, cap);
}

/// An element of W taking the canonical block with the same uniform sequence
/// onto `target`.  Built top-down: at each touched class, send the first
/// y_i/y_{i-1} subclasses onto the subclasses that meet the target.
inline ChainPermutation transporter(const ChainSpec& chain, const Block& target) {
  validate_block(chain, target);
  auto uni = is_uniform(chain, target);
  if (!std::holds_alternative<UniformSequence>(uni)) throw chain_error("block is not uniform");
  const auto& y = std::get<UniformSequence>(uni);
  WreathElement w(chain);
  const auto ranks = target.ranks();

  auto assign = [&](auto&& self, int level, std::int64_t src, std::int64_t dst) -> void {
    if (level == 0) return;
    const auto size = chain.class_size(level);
    const auto lo = std::lower_bound(ranks.begin(), ranks.end(), dst * size);
    const auto hi = std::lower_bound(ranks.begin(), ranks.end(), (dst + 1) * size);
    std::vector<std::int64_t> hit;
    for (auto it = lo; it != hi; ++it) hit.push_back(coordinate(chain, *it, level));
    hit.erase(std::unique(hit.begin(), hit.end()), hit.end());  // already sorted
    const auto e = chain.e(level);
    std::vector<char> used(static_cast<std::size_t>(e), 0);
    for (auto h : hit) used[static_cast<std::size_t>(h)] = 1;
    auto* lab = w.label_data(level, src);
    std::int64_t spare = 0;
    for (std::int64_t x = 0; x < e; ++x) {
      if (x < static_cast<std::int64_t>(hit.size())) {
        lab[x] = hit[static_cast<std::size_t>(x)];
      } else {
        while (used[static_cast<std::size_t>(spare)]) ++spare;
        lab[x] = spare++;
      }
    }
    for (std::size_t j = 0; j < hit.size(); ++j) {
      self(self, level - 1, static_cast<std::int64_t>(j) + e * src, hit[j] + e * dst);
    }
  };
  assign(assign, chain.s(), 0, 0);

  auto g = w.to_permutation();
  if (g.apply(canonical_block(chain, y)) != target) {
    throw internal_error("transporter does not reach the target block");
  }
  return g;
}

/// Generators of Sym(E_1) wr ... wr Sym(E_s) inside the setwise stabiliser
/// of a uniform block B, where E_i are the symbols B uses at level i.  For a
/// non-canonical B they are conjugated over from the canonical block.
inline std::vector<ChainPermutation> restricted_generators(const ChainSpec& chain, const Block& b) {
  const auto t = transporter(chain, b);
  const auto y = std::get<UniformSequence>(is_uniform(chain, b));
  const auto t_inv = t.inverse();
  std::vector<ChainPermutation> out;
  for (int i = 1; i <= chain.s(); ++i) {
    if (y.ratio(i) < 2) continue;
    for (const auto& h : detail::symmetric_generators(chain, i, y.ratio(i))) {
      out.push_back(t_inv.then(h).then(t));
    }
  }
  return out;
}

/// Whether the restricted stabiliser subgroup moves the least point of B
/// onto every point of B, without leaving B.
inline bool stabilizer_transitive_on_block(const ChainSpec& chain, const Block& b) {
  const auto gens = restricted_generators(chain, b);
  for (const auto& g : gens) {
    if (g.apply(b) != b) return false;
  }
  const auto result = orbit(*b.begin(), gens, b.size() + 1);
  if (!result.complete || result.elements.size() != b.size()) return false;
  return std::all_of(result.elements.begin(), result.elements.end(),
                     [&](Rank r) { return b.contains(r); });
}

}  // namespace chaindesign
