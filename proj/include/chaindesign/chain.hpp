#pragma once

// Point set P = Z_{e1} x ... x Z_{es} and the chain of partitions
// C_0 < C_1 < ... < C_s it carries.  A level-i class is the set of points
// that agree on every coordinate above i.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chaindesign {

/// Mixed-radix index of a point, delta_1 least significant.
using Rank = std::int64_t;

class chain_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ChainSpec {
 public:
  ChainSpec() = default;

  explicit ChainSpec(std::vector<std::int64_t> radices) : e_(std::move(radices)) {
    if (e_.size() < 2) {
      throw chain_error("chain needs at least two levels, got " + std::to_string(e_.size()));
    }
    c_.assign(e_.size() + 1, 1);
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (e_[i] < 2) {
        throw chain_error("e_" + std::to_string(i + 1) + " must be at least 2, got " +
                          std::to_string(e_[i]));
      }
      std::int64_t next = 0;
      if (__builtin_mul_overflow(c_[i], e_[i], &next) || next > kMaxPoints) {
        throw chain_error("point count exceeds supported range");
      }
      c_[i + 1] = next;
    }
  }

  int s() const { return static_cast<int>(e_.size()); }
  std::int64_t v() const { return c_.back(); }

  /// e_i for 1 <= i <= s.
  std::int64_t e(int i) const { return e_.at(static_cast<std::size_t>(i - 1)); }

  /// Size of a level-i class, 0 <= i <= s.
  std::int64_t class_size(int i) const { return c_.at(static_cast<std::size_t>(i)); }

  /// Number of level-i classes, v / c_i.
  std::int64_t class_count(int i) const { return v() / class_size(i); }

  const std::vector<std::int64_t>& radices() const { return e_; }

  friend bool operator==(const ChainSpec&, const ChainSpec&) = default;

  // Ranks and every product the arithmetic needs stay well inside int64.
  static constexpr std::int64_t kMaxPoints = std::int64_t{1} << 40;

 private:
  std::vector<std::int64_t> e_;
  std::vector<std::int64_t> c_;
};

struct Point {
  std::vector<std::int64_t> coords;  // (delta_1, ..., delta_s)

  friend bool operator==(const Point&, const Point&) = default;
};

struct ClassId {
  int level = 0;
  std::vector<std::int64_t> suffix;  // (delta_{level+1}, ..., delta_s)

  friend auto operator<=>(const ClassId&, const ClassId&) = default;
  friend bool operator==(const ClassId&, const ClassId&) = default;
};

inline void require_level(const ChainSpec& chain, int level, int lo = 0) {
  if (level < lo || level > chain.s()) {
    throw chain_error("level " + std::to_string(level) + " outside [" + std::to_string(lo) +
                      ", " + std::to_string(chain.s()) + "]");
  }
}

inline void require_rank(const ChainSpec& chain, Rank r) {
  if (r < 0 || r >= chain.v()) {
    throw chain_error("rank " + std::to_string(r) + " outside [0, " + std::to_string(chain.v()) +
                      ")");
  }
}

inline void validate_point(const ChainSpec& chain, const Point& p) {
  if (p.coords.size() != static_cast<std::size_t>(chain.s())) {
    throw chain_error("point has " + std::to_string(p.coords.size()) + " coordinates, chain has " +
                      std::to_string(chain.s()) + " levels");
  }
  for (int i = 1; i <= chain.s(); ++i) {
    const auto d = p.coords[static_cast<std::size_t>(i - 1)];
    if (d < 0 || d >= chain.e(i)) {
      throw chain_error("coordinate " + std::to_string(i) + " = " + std::to_string(d) +
                        " outside [0, " + std::to_string(chain.e(i)) + ")");
    }
  }
}

inline Rank rank_of(const ChainSpec& chain, const Point& p) {
  validate_point(chain, p);
  Rank r = 0;
  for (int i = chain.s(); i >= 1; --i) r = r * chain.e(i) + p.coords[static_cast<std::size_t>(i - 1)];
  return r;
}

inline Point point_at(const ChainSpec& chain, Rank r) {
  require_rank(chain, r);
  Point p;
  p.coords.reserve(static_cast<std::size_t>(chain.s()));
  for (int i = 1; i <= chain.s(); ++i) {
    p.coords.push_back(r % chain.e(i));
    r /= chain.e(i);
  }
  return p;
}

/// Coordinate delta_i of the point with rank r.
inline std::int64_t coordinate(const ChainSpec& chain, Rank r, int i) {
  return (r / chain.class_size(i - 1)) % chain.e(i);
}

/// Index of the level-i class holding rank r.  Level-i classes are the
/// contiguous rank intervals [idx * c_i, (idx + 1) * c_i).
inline std::int64_t class_index(const ChainSpec& chain, Rank r, int level) {
  return r / chain.class_size(level);
}

inline std::int64_t class_index(const ChainSpec& chain, const ClassId& c) {
  std::int64_t idx = 0;
  for (int i = chain.s(); i > c.level; --i) {
    idx = idx * chain.e(i) + c.suffix[static_cast<std::size_t>(i - c.level - 1)];
  }
  return idx;
}

inline ClassId class_from_index(const ChainSpec& chain, int level, std::int64_t idx) {
  require_level(chain, level);
  if (idx < 0 || idx >= chain.class_count(level)) {
    throw chain_error("class index " + std::to_string(idx) + " out of range at level " +
                      std::to_string(level));
  }
  ClassId c{level, {}};
  for (int i = level + 1; i <= chain.s(); ++i) {
    c.suffix.push_back(idx % chain.e(i));
    idx /= chain.e(i);
  }
  return c;
}

inline void validate_class(const ChainSpec& chain, const ClassId& c) {
  require_level(chain, c.level);
  if (c.suffix.size() != static_cast<std::size_t>(chain.s() - c.level)) {
    throw chain_error("class suffix length " + std::to_string(c.suffix.size()) +
                      " does not match level " + std::to_string(c.level));
  }
  for (int i = c.level + 1; i <= chain.s(); ++i) {
    const auto d = c.suffix[static_cast<std::size_t>(i - c.level - 1)];
    if (d < 0 || d >= chain.e(i)) throw chain_error("class suffix coordinate out of range");
  }
}

inline ClassId class_of(const ChainSpec& chain, const Point& p, int level) {
  validate_point(chain, p);
  require_level(chain, level);
  return ClassId{level, {p.coords.begin() + level, p.coords.end()}};
}

/// C+ : the level-(i+1) class containing a level-i class.
inline ClassId parent_class(const ChainSpec& chain, const ClassId& c) {
  validate_class(chain, c);
  if (c.level >= chain.s()) throw chain_error("the top class has no parent");
  return ClassId{c.level + 1, {c.suffix.begin() + 1, c.suffix.end()}};
}

/// First rank of the class and one past its last rank.
inline std::pair<Rank, Rank> class_range(const ChainSpec& chain, const ClassId& c) {
  validate_class(chain, c);
  const auto lo = class_index(chain, c) * chain.class_size(c.level);
  return {lo, lo + chain.class_size(c.level)};
}

inline bool contains(const ChainSpec& chain, const ClassId& c, Rank r) {
  const auto [lo, hi] = class_range(chain, c);
  return r >= lo && r < hi;
}

}  // namespace chaindesign
