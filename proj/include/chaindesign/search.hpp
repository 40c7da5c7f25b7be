#pragma once

// Exhaustive sweep over chains with every e_i <= e_max for feasible k.

#include <algorithm>
#include <cstdint>
#include <future>
#include <iomanip>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "chaindesign/chain.hpp"
#include "chaindesign/design.hpp"
#include "chaindesign/feasibility.hpp"
#include "chaindesign/text.hpp"

namespace chaindesign {

struct SearchRow {
  std::vector<std::int64_t> e;
  std::int64_t v = 0;
  std::int64_t k = 0;
  std::vector<std::int64_t> y;  // y_1..y_{s-1}
  bool family = false;

  friend auto operator<=>(const SearchRow& a, const SearchRow& b) {
    if (auto c = a.e <=> b.e; c != 0) return c;
    return a.k <=> b.k;
  }
  friend bool operator==(const SearchRow&, const SearchRow&) = default;
};

/// The three-chain conditions written out directly, independent of check_ft:
///   1. e1 e2 e3 - 1 divides (k - 1)d
///   2. 1 + (k-1)(e1 - 1)/(e1 e2 e3 - 1) divides (e2 - 1)e1/d
///   3. 1 + (k-1)(e1 e2 - 1)/(e1 e2 e3 - 1) divides (e3 - 1)e1 e2/d
inline bool three_chain_conditions(std::int64_t e1, std::int64_t e2, std::int64_t e3, std::int64_t k) {
  const std::int64_t v = e1 * e2 * e3;
  const std::int64_t d = std::gcd(std::gcd(e1 - 1, e2 - 1), e3 - 1);
  if (((k - 1) * d) % (v - 1) != 0) return false;
  auto term = [&](std::int64_t c, std::int64_t& out) {
    const Wide num = Wide{k - 1} * (c - 1);
    if (num % (v - 1) != 0) return false;
    out = static_cast<std::int64_t>(1 + num / (v - 1));
    return out > 0;
  };
  std::int64_t y1 = 0;
  std::int64_t y2 = 0;
  if (!term(e1, y1) || ((e2 - 1) * e1 / d) % y1 != 0) return false;
  if (!term(e1 * e2, y2) || ((e3 - 1) * e1 * e2 / d) % y2 != 0) return false;
  return true;
}

inline bool is_family_row(const ChainSpec& chain, std::int64_t k) {
  const auto d = chain.e(1) - 1;
  if (d < 2) return false;
  try {
    const auto fam = family_params(chain.s(), d);
    return fam.chain == chain && fam.k == k;
  } catch (const chain_error&) {
    return false;
  }
}

namespace detail {

/// All rows whose first radix is e1.
inline std::vector<SearchRow> search_shard(int s, std::int64_t e_max, std::int64_t e1) {
  std::vector<SearchRow> rows;
  std::vector<std::int64_t> e(static_cast<std::size_t>(s), 2);
  e[0] = e1;
  while (true) {
    const ChainSpec chain(e);
    for (const auto& rep : search_k(chain)) {
      if (s == 3 && !three_chain_conditions(e[0], e[1], e[2], rep.k)) {
        throw internal_error("three-chain conditions disagree with FT1/FT2 at e=" + join(e) +
                             " k=" + std::to_string(rep.k));
      }
      SearchRow row{e, chain.v(), rep.k, {}, is_family_row(chain, rep.k)};
      for (int i = 1; i < s; ++i) row.y.push_back((*rep.y)[i]);
      rows.push_back(std::move(row));
    }
    if (s == 3) {
      // The converse direction: every k the direct conditions accept.
      const auto step = (chain.v() - 1) / chain_gcd(chain);
      for (std::int64_t k = 1 + step; k < chain.v(); k += step) {
        if (three_chain_conditions(e[0], e[1], e[2], k) && !check_ft(chain, k).feasible()) {
          throw internal_error("three-chain conditions accept e=" + join(e) + " k=" +
                               std::to_string(k) + " but FT1/FT2 reject it");
        }
      }
    }
    std::size_t j = 1;
    while (j < e.size() && ++e[j] > e_max) e[j++] = 2;
    if (j == e.size()) break;
  }
  return rows;
}

}  // namespace detail

/// Every (e, k) with 2 <= e_i <= e_max and 2 <= k < v passing FT1/FT2,
/// sorted by (e_1, ..., e_s, k).  Sharded by e_1 across threads.
inline std::vector<SearchRow> search(int s, std::int64_t e_max, unsigned threads = 0) {
  if (s < 2 || e_max < 2) throw chain_error("search needs s >= 2 and e_max >= 2");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<SearchRow> rows;
  std::vector<std::future<std::vector<SearchRow>>> pending;
  auto drain = [&] {
    for (auto& f : pending) {
      auto part = f.get();
      rows.insert(rows.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    pending.clear();
  };
  for (std::int64_t e1 = 2; e1 <= e_max; ++e1) {
    if (threads == 1) {
      auto part = detail::search_shard(s, e_max, e1);
      rows.insert(rows.end(), part.begin(), part.end());
      continue;
    }
    pending.push_back(std::async(std::launch::async, detail::search_shard, s, e_max, e1));
    if (pending.size() >= threads) drain();
  }
  drain();
  std::sort(rows.begin(), rows.end());
  return rows;
}

enum class TableFormat { csv, text };

/// Columns e1..es, v, k, y1..y_{s-1}, family.  `s` sets the header when
/// `rows` is empty.
inline std::string emit_table(const std::vector<SearchRow>& rows, int s, TableFormat format) {
  std::vector<std::string> header;
  for (int i = 1; i <= s; ++i) header.push_back("e" + std::to_string(i));
  header.push_back("v");
  header.push_back("k");
  for (int i = 1; i < s; ++i) header.push_back("y" + std::to_string(i));
  header.push_back("family");

  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows) {
    std::vector<std::string> line;
    for (auto x : row.e) line.push_back(std::to_string(x));
    line.push_back(std::to_string(row.v));
    line.push_back(std::to_string(row.k));
    for (auto x : row.y) line.push_back(std::to_string(x));
    line.push_back(row.family ? "family" : "-");
    cells.push_back(std::move(line));
  }

  std::ostringstream out;
  if (format == TableFormat::csv) {
    out << join(header) << '\n';
    for (const auto& line : cells) out << join(line) << '\n';
    return out.str();
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  auto put = [&](const std::vector<std::string>& line) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c) out << "  ";
      out << std::setw(static_cast<int>(width[c])) << line[c];
    }
    out << '\n';
  };
  put(header);
  for (const auto& line : cells) put(line);
  return out.str();
}

}  // namespace chaindesign
