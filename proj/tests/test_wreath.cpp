#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "chaindesign/design.hpp"
#include "chaindesign/wreath.hpp"

namespace chaindesign {
namespace {

using Seq = std::vector<std::int64_t>;

// The image of each class, as a point set, must be exactly one class of
// the same level.  Checked directly, not through chain_violation.
bool preserves_chain(const ChainSpec& c, const ChainPermutation& g) {
  for (int i = 1; i < c.s(); ++i) {
    for (std::int64_t idx = 0; idx < c.class_count(i); ++idx) {
      std::set<std::int64_t> targets;
      for (Rank r = idx * c.class_size(i); r < (idx + 1) * c.class_size(i); ++r) {
        targets.insert(g(r) / c.class_size(i));
      }
      if (targets.size() != 1) return false;
    }
  }
  return true;
}

TEST(GeneratorsTest, PreserveChain) {
  for (const auto& e : std::vector<Seq>{{2, 2}, {4, 4}, {3, 5, 2}, {2, 3, 2, 3}}) {
    const ChainSpec c(e);
    const auto gens = wreath_generators(c);
    EXPECT_EQ(gens.gens.size(), static_cast<std::size_t>(2 * c.s()));
    for (const auto& g : gens.gens) EXPECT_TRUE(preserves_chain(c, g));
    // Transitive on points.
    const auto pts = orbit(Rank{0}, gens, static_cast<std::size_t>(c.v()) + 1);
    EXPECT_TRUE(pts.complete);
    EXPECT_EQ(static_cast<std::int64_t>(pts.elements.size()), c.v());
  }
}

TEST(GeneratorsTest, GroupOrders) {
  EXPECT_EQ(group_order(wreath_generators(ChainSpec({2, 2})).gens), 8);
  EXPECT_EQ(group_order(wreath_generators(ChainSpec({4, 4})).gens), 7962624);
  for (const auto& e : std::vector<Seq>{{2, 2}, {2, 3}, {3, 2}, {4, 4}, {2, 2, 2}, {3, 2, 2}, {2, 5}, {5, 4}}) {
    const ChainSpec c(e);
    EXPECT_EQ(group_order(wreath_generators(c).gens), wreath_order(c)) << join(e);
  }
}

// Orbit-stabiliser by hand for (2,2): the group is dihedral of order 8, so
// every element is a product of generators of length <= 4.
TEST(GeneratorsTest, SmallGroupByClosure) {
  const ChainSpec c({2, 2});
  const auto gens = wreath_generators(c).gens;
  auto key = [](const ChainPermutation& g) { return std::vector<Rank>(g.images().begin(), g.images().end()); };
  std::set<std::vector<Rank>> elements{key(ChainPermutation::identity(c))};
  std::vector<ChainPermutation> frontier{ChainPermutation::identity(c)};
  while (!frontier.empty()) {
    std::vector<ChainPermutation> next;
    for (const auto& f : frontier) {
      for (const auto& g : gens) {
        auto h = f.then(g);
        if (elements.insert(key(h)).second) next.push_back(h);
      }
    }
    frontier = std::move(next);
  }
  EXPECT_EQ(elements.size(), 8u);
  for (const auto& img : elements) EXPECT_TRUE(preserves_chain(c, ChainPermutation::from_images(c, img)));
}

TEST(WreathElementTest, RandomElementsPreserveChain) {
  const ChainSpec c({3, 4, 2});
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    const auto g = random_chain_permutation(c, rng);
    EXPECT_TRUE(preserves_chain(c, g));
  }
}

TEST(OrbitTest, Examples) {
  const ChainSpec c44({4, 4});
  const auto y44 = UniformSequence::make(c44, {1, 2, 6});
  const auto gens44 = wreath_generators(c44);
  const auto o = orbit(canonical_block(c44, y44), gens44, 1'000'000);
  EXPECT_TRUE(o.complete);
  EXPECT_EQ(o.elements.size(), 864u);
  const std::set<Block> a(o.elements.begin(), o.elements.end());
  const auto listed = enumerate_blocks(c44, y44);
  EXPECT_EQ(a, std::set<Block>(listed.begin(), listed.end()));

  const ChainSpec c35({3, 5});
  const auto y35 = UniformSequence::make(c35, {1, 2, 8});
  const auto o2 = orbit(canonical_block(c35, y35), wreath_generators(c35), 1'000'000);
  EXPECT_EQ(o2.elements.size(), 405u);
  const auto listed2 = enumerate_blocks(c35, y35);
  EXPECT_EQ(std::set<Block>(o2.elements.begin(), o2.elements.end()),
            std::set<Block>(listed2.begin(), listed2.end()));
}

TEST(OrbitTest, CapStopsEarly) {
  const ChainSpec c({4, 4});
  const auto y = UniformSequence::make(c, {1, 2, 6});
  const auto o = orbit(canonical_block(c, y), wreath_generators(c), 100);
  EXPECT_FALSE(o.complete);
  EXPECT_EQ(o.elements.size(), 100u);
}

TEST(OrbitTest, FlagOrbit) {
  const ChainSpec c({4, 4});
  const auto canon = canonical_block(c, UniformSequence::make(c, {1, 2, 6}));
  const auto flags = orbit(Flag{*canon.begin(), canon}, wreath_generators(c), 1'000'000);
  EXPECT_TRUE(flags.complete);
  EXPECT_EQ(flags.elements.size(), 5184u);
  // Starting from another flag gives the same orbit.
  const auto other = orbit(Flag{canon.ranks().back(), canon}, wreath_generators(c), 1'000'000);
  EXPECT_EQ(std::set<Flag>(flags.elements.begin(), flags.elements.end()),
            std::set<Flag>(other.elements.begin(), other.elements.end()));
}

// Orbit = enumeration for every uniform sequence with b <= 10^5 on small chains.
TEST(WreathProperties, OrbitEqualsEnumeration) {
  int checked = 0;
  for (const auto& e : std::vector<Seq>{{4, 4}, {3, 5}, {6, 6}, {2, 3, 2}, {3, 3, 2}, {2, 2, 2, 2}}) {
    const ChainSpec c(e);
    const auto gens = wreath_generators(c);
    std::vector<Seq> seqs{{1}};
    for (int i = 1; i <= c.s(); ++i) {
      std::vector<Seq> next;
      for (const auto& y : seqs) {
        for (std::int64_t r = 1; r <= c.e(i); ++r) {
          auto z = y;
          z.push_back(y.back() * r);
          next.push_back(z);
        }
      }
      seqs = std::move(next);
    }
    for (const auto& y : seqs) {
      const auto seq = UniformSequence::make(c, y);
      if (block_count(c, seq) > 100'000) continue;
      const auto listed = enumerate_blocks(c, seq);
      const auto o = orbit(canonical_block(c, seq), gens, 200'000);
      ASSERT_TRUE(o.complete);
      EXPECT_EQ(std::set<Block>(o.elements.begin(), o.elements.end()),
                std::set<Block>(listed.begin(), listed.end()))
          << join(e) << " y=" << join(y);
      ++checked;
    }
  }
  EXPECT_GT(checked, 40);
}

TEST(StabilizerTest, Examples) {
  const ChainSpec c44({4, 4});
  EXPECT_TRUE(stabilizer_transitive_on_block(c44, canonical_block(c44, UniformSequence::make(c44, {1, 2, 6}))));
  const ChainSpec c35({3, 5});
  EXPECT_TRUE(stabilizer_transitive_on_block(c35, canonical_block(c35, UniformSequence::make(c35, {1, 2, 8}))));
  const ChainSpec c22({2, 2});
  EXPECT_TRUE(stabilizer_transitive_on_block(c22, canonical_block(c22, UniformSequence::make(c22, {1, 2, 4}))));
  const ChainSpec big({3, 5, 17});
  EXPECT_TRUE(
      stabilizer_transitive_on_block(big, canonical_block(big, UniformSequence::make(big, {1, 2, 8, 128}))));
}

TEST(StabilizerTest, NonCanonicalBlocks) {
  const ChainSpec c({3, 4, 3});
  const auto y = UniformSequence::make(c, {1, 2, 4, 8});
  std::mt19937_64 rng(13);
  for (int t = 0; t < 20; ++t) {
    const auto b = random_uniform_block(c, y, rng);
    EXPECT_TRUE(stabilizer_transitive_on_block(c, b));
    for (const auto& g : restricted_generators(c, b)) EXPECT_EQ(g.apply(b), b);
  }
}

TEST(TransporterTest, ReachesTargets) {
  const ChainSpec c({3, 5, 17});
  const auto y = UniformSequence::make(c, {1, 2, 8, 128});
  const auto canon = canonical_block(c, y);
  std::mt19937_64 rng(21);
  for (int t = 0; t < 10; ++t) {
    const auto b = random_uniform_block(c, y, rng);
    const auto g = transporter(c, b);
    EXPECT_TRUE(preserves_chain(c, g));
    EXPECT_EQ(g.apply(canon), b);
  }
  const ChainSpec small({4, 4});
  EXPECT_THROW(transporter(small, Block({0, 1, 4})), chain_error);
}

}  // namespace
}  // namespace chaindesign
