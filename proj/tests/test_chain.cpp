#include <map>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "chaindesign/array.hpp"
#include "chaindesign/chain.hpp"
#include "chaindesign/text.hpp"
#include "chaindesign/wreath.hpp"

namespace chaindesign {
namespace {

Point pt(std::vector<std::int64_t> c) { return Point{std::move(c)}; }

TEST(ChainSpecTest, DerivedSizes) {
  const ChainSpec chain({3, 5, 17});
  EXPECT_EQ(chain.s(), 3);
  EXPECT_EQ(chain.v(), 255);
  EXPECT_EQ(chain.class_size(0), 1);
  EXPECT_EQ(chain.class_size(1), 3);
  EXPECT_EQ(chain.class_size(2), 15);
  EXPECT_EQ(chain.class_size(3), 255);
  EXPECT_EQ(chain.class_count(0), 255);
  EXPECT_EQ(chain.class_count(1), 85);
  EXPECT_EQ(chain.class_count(3), 1);
  for (int i = 0; i <= chain.s(); ++i) {
    EXPECT_EQ(chain.class_size(i) * chain.class_count(i), chain.v());
  }
}

TEST(ChainSpecTest, RejectsDegenerateChains) {
  EXPECT_THROW(ChainSpec({4}), chain_error);
  EXPECT_THROW(ChainSpec({4, 1}), chain_error);
  EXPECT_THROW(ChainSpec(std::vector<std::int64_t>{}), chain_error);
  EXPECT_THROW(ChainSpec({1 << 21, 1 << 21}), chain_error);
}

TEST(ClassOfTest, Examples) {
  const ChainSpec c44({4, 4});
  EXPECT_EQ(class_of(c44, pt({2, 3}), 1), (ClassId{1, {3}}));
  EXPECT_EQ(class_of(c44, pt({2, 3}), 2), (ClassId{2, {}}));

  const ChainSpec c({3, 5, 17});
  const auto cls = class_of(c, pt({1, 4, 16}), 2);
  EXPECT_EQ(cls, (ClassId{2, {16}}));
  // Enumerate every point with delta_3 = 16.
  int members = 0;
  for (Rank r = 0; r < c.v(); ++r) {
    if (point_at(c, r).coords[2] == 16) {
      ++members;
      EXPECT_EQ(class_of(c, point_at(c, r), 2), cls);
      EXPECT_TRUE(contains(c, cls, r));
    } else {
      EXPECT_FALSE(contains(c, cls, r));
    }
  }
  EXPECT_EQ(members, 15);
}

TEST(ClassOfTest, LevelOutOfRange) {
  const ChainSpec c({4, 4});
  EXPECT_THROW(class_of(c, pt({0, 0}), 3), chain_error);
  EXPECT_THROW(class_of(c, pt({0, 0}), -1), chain_error);
  EXPECT_THROW(class_of(c, pt({4, 0}), 1), chain_error);
}

TEST(ParentClassTest, Examples) {
  EXPECT_EQ(parent_class(ChainSpec({4, 4}), ClassId{1, {3}}), (ClassId{2, {}}));
  EXPECT_EQ(parent_class(ChainSpec({3, 5, 17}), ClassId{1, {4, 16}}), (ClassId{2, {16}}));
  EXPECT_THROW(parent_class(ChainSpec({4, 4}), ClassId{2, {}}), chain_error);
}

TEST(ParentClassTest, ComposesWithClassOf) {
  const ChainSpec c({3, 5, 17});
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const auto p = point_at(c, static_cast<Rank>(rng() % static_cast<std::uint64_t>(c.v())));
    EXPECT_EQ(parent_class(c, parent_class(c, class_of(c, p, 0))), class_of(c, p, 2));
    for (int i = 1; i <= c.s(); ++i) {
      EXPECT_EQ(class_of(c, p, i), parent_class(c, class_of(c, p, i - 1)));
    }
  }
}

TEST(ChainInvariantTest, ClassSizesAndSubclassCounts) {
  for (const auto& e : std::vector<std::vector<std::int64_t>>{{4, 4}, {3, 5, 2}, {2, 3, 2, 2}}) {
    const ChainSpec c(e);
    for (int i = 1; i <= c.s(); ++i) {
      std::map<ClassId, int> members;
      std::map<ClassId, std::set<ClassId>> children;
      for (Rank r = 0; r < c.v(); ++r) {
        const auto p = point_at(c, r);
        ++members[class_of(c, p, i)];
        children[class_of(c, p, i)].insert(class_of(c, p, i - 1));
      }
      EXPECT_EQ(static_cast<std::int64_t>(members.size()), c.class_count(i));
      for (const auto& [cls, n] : members) EXPECT_EQ(n, c.class_size(i));
      for (const auto& [cls, kids] : children) {
        EXPECT_EQ(static_cast<std::int64_t>(kids.size()), c.e(i));
      }
    }
  }
}

TEST(ChainInvariantTest, RankRoundTrip) {
  const ChainSpec c({3, 5, 4});
  for (Rank r = 0; r < c.v(); ++r) EXPECT_EQ(rank_of(c, point_at(c, r)), r);
  EXPECT_EQ(rank_of(c, pt({1, 0, 0})), 1);
  EXPECT_EQ(rank_of(c, pt({0, 1, 0})), 3);
  EXPECT_EQ(rank_of(c, pt({0, 0, 1})), 15);
}

TEST(PointSyntaxTest, ParsesBothForms) {
  const ChainSpec c({3, 5, 17});
  EXPECT_EQ(parse_point(c, "(1,4,16)"), 253);
  EXPECT_EQ(parse_point(c, "#253"), 253);
  EXPECT_EQ(format_point(point_at(c, 253)), "(1,4,16)");
  EXPECT_THROW(parse_point(c, "#255"), chain_error);
  EXPECT_THROW(parse_point(c, "(1,4)"), chain_error);
  EXPECT_THROW(parse_point(c, "1,4,16"), parse_error);
  EXPECT_THROW(parse_point(c, "(1,x,16)"), parse_error);
}

TEST(ClassesMeetingTest, Examples) {
  const ChainSpec c({4, 4});
  EXPECT_TRUE(classes_meeting(c, {}, 1).empty());
  std::vector<Rank> all(16);
  for (Rank r = 0; r < 16; ++r) all[static_cast<std::size_t>(r)] = r;
  EXPECT_EQ(classes_meeting(c, all, 1).size(), 4u);
  EXPECT_EQ(classes_meeting(c, all, 2).size(), 1u);
  // Canonical block for k = 6, y = (1,2,6): {0,1} x {0,1,2}.
  const std::vector<Rank> canon{0, 1, 4, 5, 8, 9};
  EXPECT_EQ(classes_meeting(c, canon, 1).size(), 3u);
  EXPECT_THROW(classes_meeting(c, canon, 0), chain_error);
}

TEST(ArrayOfTest, Examples) {
  const ChainSpec c({4, 4});
  const auto empty = array_of(c, std::vector<Rank>{});
  for (int i = 1; i <= 2; ++i) EXPECT_TRUE(empty.level(i).empty());

  const auto single = array_of(c, std::vector<Rank>{rank_of(c, pt({2, 3}))});
  EXPECT_EQ(single.value(ClassId{1, {3}}), 1);
  EXPECT_EQ(single.value(ClassId{2, {}}), 1);
  EXPECT_EQ(single.value(ClassId{1, {0}}), 0);
  EXPECT_EQ(single.level(1).size(), 1u);

  const auto canon = array_of(c, std::vector<Rank>{0, 1, 4, 5, 8, 9});
  EXPECT_EQ(canon.value(ClassId{1, {0}}), 2);
  EXPECT_EQ(canon.value(ClassId{1, {1}}), 2);
  EXPECT_EQ(canon.value(ClassId{1, {2}}), 2);
  EXPECT_EQ(canon.value(ClassId{1, {3}}), 0);
  EXPECT_EQ(canon.value(ClassId{2, {}}), 6);
}

TEST(ArrayOfTest, AggregationInvariantOnRandomSubsets) {
  std::mt19937_64 rng(11);
  for (const auto& e : std::vector<std::vector<std::int64_t>>{{4, 4}, {3, 5, 17}, {2, 3, 2, 3}}) {
    const ChainSpec c(e);
    for (int t = 0; t < 50; ++t) {
      std::vector<Rank> pts;
      for (Rank r = 0; r < c.v(); ++r) {
        if (rng() % 3 == 0) pts.push_back(r);
      }
      const auto a = array_of(c, pts);
      EXPECT_TRUE(a.is_consistent());
      EXPECT_EQ(a.value(ClassId{c.s(), {}}), static_cast<std::int64_t>(pts.size()));
    }
  }
}

TEST(PermuteArrayTest, IdentityAndGenerators) {
  const ChainSpec c({3, 4, 2});
  std::mt19937_64 rng(3);
  const auto gens = wreath_generators(c);
  for (int t = 0; t < 30; ++t) {
    std::vector<Rank> pts;
    for (Rank r = 0; r < c.v(); ++r) {
      if (rng() % 2) pts.push_back(r);
    }
    const Block b(pts);
    const auto a = array_of(c, b);
    EXPECT_EQ(permute_array(a, ChainPermutation::identity(c)), a);
    for (const auto& g : gens.gens) {
      EXPECT_EQ(permute_array(a, g), array_of(c, g.apply(b)));
    }
    const auto g = random_chain_permutation(c, rng);
    const auto moved = permute_array(a, g);
    EXPECT_EQ(moved, array_of(c, g.apply(b)));
    for (int i = 1; i <= c.s(); ++i) {
      std::multiset<std::int64_t> before;
      std::multiset<std::int64_t> after;
      for (auto [idx, x] : a.level(i)) before.insert(x);
      for (auto [idx, x] : moved.level(i)) after.insert(x);
      EXPECT_EQ(before, after);
    }
  }
}

TEST(ChainPermutationTest, RejectsNonChainMaps) {
  const ChainSpec c({2, 2});
  // Swapping points 1 and 2 splits the level-1 class {0, 1}.
  EXPECT_THROW(ChainPermutation::from_images(c, {0, 2, 1, 3}), chain_error);
  EXPECT_THROW(ChainPermutation::from_images(c, {0, 0, 2, 3}), chain_error);
  EXPECT_THROW(ChainPermutation::from_images(c, {0, 1, 2}), chain_error);
  const auto g = ChainPermutation::from_images(c, {2, 3, 1, 0});
  EXPECT_EQ(g.to_string(), "2 3 1 0");
  EXPECT_EQ(ChainPermutation::parse(c, g.to_string()), g);
  EXPECT_TRUE(g.then(g.inverse()).is_identity());
}

}  // namespace
}  // namespace chaindesign
