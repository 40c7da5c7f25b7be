#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "chaindesign/search.hpp"

namespace chaindesign {
namespace {

using Seq = std::vector<std::int64_t>;

std::string golden() {
  std::ifstream in(THREE_CHAINS_CSV);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(SearchTest, ThreeChainTableMatchesGolden) {
  const auto rows = search(3, 50);
  EXPECT_EQ(rows.size(), 57u);
  EXPECT_EQ(emit_table(rows, 3, TableFormat::csv), golden());
  std::vector<Seq> family;
  for (const auto& r : rows) {
    if (r.family) family.push_back({r.e[0], r.e[1], r.e[2], r.k});
  }
  EXPECT_EQ(family, (std::vector<Seq>{{3, 5, 17, 128}, {4, 7, 31, 290}, {5, 9, 49, 552}}));
}

TEST(SearchTest, TwoChainSmall) {
  const auto rows = search(2, 6);
  std::vector<Seq> got;
  for (const auto& r : rows) got.push_back({r.e[0], r.e[1], r.k});
  EXPECT_EQ(got, (std::vector<Seq>{{3, 5, 8}, {4, 4, 6}, {6, 6, 8}, {6, 6, 15}}));
  // (5,3): FT1 forces k = 8, where y_1 = 3 divides neither 8 nor (e2-1)e1/d = 5.
  EXPECT_FALSE(check_ft(ChainSpec({5, 3}), 8).feasible());
  EXPECT_TRUE(search_k(ChainSpec({5, 3})).empty());
}

TEST(SearchTest, ThreadCountDoesNotChangeResult) {
  EXPECT_EQ(search(3, 24, 1), search(3, 24, 3));
  EXPECT_EQ(search(2, 40, 1), search(2, 40, 4));
}

TEST(SearchTest, Errors) {
  EXPECT_THROW(search(1, 10), chain_error);
  EXPECT_THROW(search(3, 1), chain_error);
}

// The three direct conditions against the generic evaluation, every tuple
// with e_i <= 20 and every k in [2, v).
TEST(SearchProperties, ThreeConditionsAgreeWithGeneric) {
  std::int64_t accepted = 0;
  for (std::int64_t a = 2; a <= 20; ++a) {
    for (std::int64_t b = 2; b <= 20; ++b) {
      for (std::int64_t c = 2; c <= 20; ++c) {
        const ChainSpec chain({a, b, c});
        for (std::int64_t k = 2; k < chain.v(); ++k) {
          const bool direct = three_chain_conditions(a, b, c, k);
          ASSERT_EQ(direct, check_ft(chain, k).feasible()) << a << "," << b << "," << c << " k=" << k;
          accepted += direct;
        }
      }
    }
  }
  EXPECT_GT(accepted, 0);
}

// Restricting k to 1 mod (v-1)/d loses nothing.
TEST(SearchProperties, RestrictedEqualsUnrestricted) {
  std::vector<SearchRow> scan;
  for (std::int64_t a = 2; a <= 12; ++a) {
    for (std::int64_t b = 2; b <= 12; ++b) {
      for (std::int64_t c = 2; c <= 12; ++c) {
        const ChainSpec chain({a, b, c});
        for (std::int64_t k = 2; k < chain.v(); ++k) {
          const auto rep = check_ft(chain, k);
          if (!rep.feasible()) continue;
          scan.push_back({{a, b, c}, chain.v(), k, {(*rep.y)[1], (*rep.y)[2]}, is_family_row(chain, k)});
        }
      }
    }
  }
  EXPECT_EQ(search(3, 12), scan);
  for (std::int64_t a = 2; a <= 44; ++a) {
    for (std::int64_t b = 2; a * b <= 2000 && b <= 44; ++b) {
      const ChainSpec chain({a, b});
      std::size_t n = 0;
      for (std::int64_t k = 2; k < chain.v(); ++k) n += check_ft(chain, k).feasible();
      EXPECT_EQ(search_k(chain).size(), n);
    }
  }
}

TEST(SearchProperties, RowsRoundTrip) {
  for (int s : {2, 3}) {
    for (const auto& row : search(s, s == 2 ? 60 : 50)) {
      const ChainSpec chain(row.e);
      EXPECT_EQ(chain.v(), row.v);
      const auto rep = check_ft(chain, row.k);
      ASSERT_TRUE(rep.feasible());
      for (int i = 1; i < s; ++i) EXPECT_EQ(row.y[static_cast<std::size_t>(i - 1)], (*rep.y)[i]);
      const auto spec = design_spec(chain, row.k);
      EXPECT_EQ(spec.lambda * (row.v * (row.v - 1)), spec.b * row.k * (row.k - 1));
      bool fam = false;
      if (row.e[0] - 1 >= 2) {
        const auto f = family_params(s, row.e[0] - 1);
        fam = f.chain.radices() == row.e && f.k == row.k;
      }
      EXPECT_EQ(row.family, fam);
    }
  }
}

TEST(SearchProperties, SeveralBlockSizesPerChainAreKept) {
  const auto rows = search(2, 6);
  int six_six = 0;
  for (const auto& r : rows) six_six += r.e == Seq{6, 6};
  EXPECT_EQ(six_six, 2);
  // For s = 3 up to 50 every chain that admits a design admits exactly one k.
  std::set<Seq> chains;
  const auto three = search(3, 50);
  for (const auto& r : three) chains.insert(r.e);
  EXPECT_EQ(chains.size(), three.size());
}

TEST(EmitTableTest, Examples) {
  const SearchRow fam{{3, 5, 17}, 255, 128, {2, 8}, true};
  const SearchRow plain{{4, 4, 10}, 160, 54, {2, 6}, false};
  EXPECT_EQ(emit_table({fam, plain}, 3, TableFormat::csv),
            "e1,e2,e3,v,k,y1,y2,family\n3,5,17,255,128,2,8,family\n4,4,10,160,54,2,6,-\n");
  EXPECT_EQ(emit_table({}, 3, TableFormat::csv), "e1,e2,e3,v,k,y1,y2,family\n");
  EXPECT_EQ(emit_table({}, 2, TableFormat::csv), "e1,e2,v,k,y1,family\n");
  EXPECT_EQ(emit_table({plain}, 3, TableFormat::text),
            "e1  e2  e3    v   k  y1  y2  family\n"
            " 4   4  10  160  54   2   6       -\n");
}

}  // namespace
}  // namespace chaindesign
