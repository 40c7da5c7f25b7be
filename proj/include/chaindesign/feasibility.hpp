#pragma once

// Feasibility of (chain, k) for a flag-transitive design preserving the
// chain.  With d = gcd(e_i - 1) and
//
//   y_i = 1 + (k - 1)(c_i - 1)/(v - 1),
//
// FT1 asks (v - 1) | (k - 1)d and FT2 asks, for 1 <= i < s, that y_i is a
// positive integer dividing (e_{i+1} - 1) c_i / d.  Everything is exact
// integer arithmetic.

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chaindesign/chain.hpp"
#include "chaindesign/text.hpp"

namespace chaindesign {

using Wide = __int128;

/// Thrown when a fact that must hold for valid input does not.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class infeasible_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// (y_0, ..., y_s) with y_0 = 1, y_{i-1} | y_i and y_i / y_{i-1} <= e_i.
class UniformSequence {
 public:
  UniformSequence() = default;

  static std::optional<std::string> violation(const ChainSpec& chain,
                                              const std::vector<std::int64_t>& y) {
    if (y.size() != static_cast<std::size_t>(chain.s()) + 1) {
      return "uniform sequence needs " + std::to_string(chain.s() + 1) + " entries";
    }
    if (y[0] != 1) return "y_0 must be 1";
    for (int i = 1; i <= chain.s(); ++i) {
      const auto prev = y[static_cast<std::size_t>(i - 1)];
      const auto cur = y[static_cast<std::size_t>(i)];
      if (cur <= 0 || cur % prev != 0) {
        return "y_" + std::to_string(i - 1) + " does not divide y_" + std::to_string(i);
      }
      if (cur / prev > chain.e(i)) {
        return "y_" + std::to_string(i) + "/y_" + std::to_string(i - 1) + " exceeds e_" +
               std::to_string(i);
      }
    }
    return std::nullopt;
  }

  static UniformSequence make(const ChainSpec& chain, std::vector<std::int64_t> y) {
    if (auto why = violation(chain, y)) throw chain_error("invalid uniform sequence: " + *why);
    UniformSequence out;
    out.y_ = std::move(y);
    return out;
  }

  const std::vector<std::int64_t>& values() const { return y_; }
  std::int64_t operator[](int i) const { return y_.at(static_cast<std::size_t>(i)); }
  int s() const { return static_cast<int>(y_.size()) - 1; }
  std::int64_t k() const { return y_.back(); }

  /// y_i / y_{i-1}: how many level-(i-1) subclasses a touched level-i class meets.
  std::int64_t ratio(int i) const { return (*this)[i] / (*this)[i - 1]; }

  friend bool operator==(const UniformSequence&, const UniformSequence&) = default;

 private:
  std::vector<std::int64_t> y_;
};

/// y_0..y_s from the closed form.  `values` holds 0 wherever y_i is not an integer.
struct YSequence {
  std::vector<std::int64_t> values;
  std::optional<int> first_nonintegral;

  bool integral() const { return !first_nonintegral.has_value(); }
};

inline void require_block_size(const ChainSpec& chain, std::int64_t k) {
  if (k < 2 || k >= chain.v()) {
    throw chain_error("block size k = " + std::to_string(k) + " outside [2, " +
                      std::to_string(chain.v()) + ")");
  }
}

inline YSequence y_sequence(const ChainSpec& chain, std::int64_t k) {
  require_block_size(chain, k);
  YSequence out;
  const Wide denom = chain.v() - 1;
  for (int i = 0; i <= chain.s(); ++i) {
    const Wide num = Wide{k - 1} * (chain.class_size(i) - 1);
    if (num % denom != 0) {
      out.values.push_back(0);
      if (!out.first_nonintegral) out.first_nonintegral = i;
    } else {
      out.values.push_back(static_cast<std::int64_t>(1 + num / denom));
    }
  }
  return out;
}

inline std::int64_t chain_gcd(const ChainSpec& chain) {
  std::int64_t d = 0;
  for (auto e : chain.radices()) d = std::gcd(d, e - 1);
  return d;
}

struct Ft2Witness {
  int index = 0;              // i in 1..s-1
  bool integral = false;      // y_i is an integer
  std::int64_t y = 0;         // y_i when integral
  std::int64_t bound = 0;     // (e_{i+1} - 1) c_i / d
  bool holds = false;
};

struct FeasibilityReport {
  ChainSpec chain;
  std::int64_t k = 0;
  std::int64_t d = 0;
  std::optional<std::int64_t> u;  // (k - 1)d/(v - 1) when FT1 holds
  YSequence raw_y;
  std::optional<UniformSequence> y;  // set exactly when feasible
  bool ft1 = false;
  bool ft2 = false;
  std::vector<Ft2Witness> ft2_witnesses;
  // Consequences recorded rather than assumed: y_{i-1} | y_i, 1 < y_i/y_{i-1} < e_i.
  bool nested_divisibility = false;
  bool strict_ratios = false;

  bool feasible() const { return ft1 && ft2; }
};

inline FeasibilityReport check_ft(const ChainSpec& chain, std::int64_t k) {
  FeasibilityReport rep;
  rep.chain = chain;
  rep.k = k;
  rep.raw_y = y_sequence(chain, k);
  rep.d = chain_gcd(chain);
  const Wide vm1 = chain.v() - 1;
  const Wide kd = Wide{k - 1} * rep.d;
  rep.ft1 = kd % vm1 == 0;
  if (rep.ft1) rep.u = static_cast<std::int64_t>(kd / vm1);

  rep.ft2 = true;
  for (int i = 1; i < chain.s(); ++i) {
    Ft2Witness w;
    w.index = i;
    w.bound = static_cast<std::int64_t>(Wide{chain.e(i + 1) - 1} * chain.class_size(i) / rep.d);
    // values[i] == 0 only marks a non-integral entry; y_i >= 1 whenever integral.
    w.integral = rep.raw_y.values[static_cast<std::size_t>(i)] != 0;
    if (w.integral) {
      w.y = rep.raw_y.values[static_cast<std::size_t>(i)];
      w.holds = w.y > 0 && w.bound % w.y == 0;
    }
    rep.ft2 = rep.ft2 && w.holds;
    rep.ft2_witnesses.push_back(w);
  }

  if (rep.raw_y.integral()) {
    const auto& y = rep.raw_y.values;
    rep.nested_divisibility = true;
    rep.strict_ratios = true;
    for (int i = 1; i <= chain.s(); ++i) {
      const auto prev = y[static_cast<std::size_t>(i - 1)];
      const auto cur = y[static_cast<std::size_t>(i)];
      if (prev <= 0 || cur % prev != 0) {
        rep.nested_divisibility = false;
        rep.strict_ratios = false;
        continue;
      }
      const auto ratio = cur / prev;
      if (!(1 < ratio && ratio < chain.e(i))) rep.strict_ratios = false;
    }
  }

  if (rep.feasible()) {
    if (!rep.raw_y.integral() || !rep.nested_divisibility || !rep.strict_ratios) {
      throw internal_error("FT1 and FT2 hold but the y-sequence violates nested divisibility");
    }
    rep.y = UniformSequence::make(chain, rep.raw_y.values);
  }
  return rep;
}

/// One line: "feasible d=2 u=1 y=1,2,8,128" or "infeasible d=3 ft1=fail ...".
inline std::string describe(const FeasibilityReport& rep) {
  std::string out = rep.feasible() ? "feasible" : "infeasible";
  out += " d=" + std::to_string(rep.d);
  if (rep.u) out += " u=" + std::to_string(*rep.u);
  if (rep.feasible()) return out + " y=" + join(rep.y->values());
  if (!rep.ft1) out += " ft1=fail";
  for (const auto& w : rep.ft2_witnesses) {
    if (w.holds) continue;
    const auto i = std::to_string(w.index);
    if (!w.integral) {
      out += " ft2=fail(y" + i + " not integral)";
    } else {
      out += " ft2=fail(y" + i + "=" + std::to_string(w.y) + " does not divide " +
             std::to_string(w.bound) + ")";
    }
    break;
  }
  return out;
}

/// Every feasible k in [2, v), ascending.  FT1 forces k = 1 (mod (v-1)/d).
inline std::vector<FeasibilityReport> search_k(const ChainSpec& chain) {
  std::vector<FeasibilityReport> out;
  const auto d = chain_gcd(chain);
  const auto step = (chain.v() - 1) / d;  // d | v - 1 since every e_i = 1 (mod d)
  for (std::int64_t k = 1 + step; k < chain.v(); k += step) {
    if (k < 2) continue;
    auto rep = check_ft(chain, k);
    if (rep.feasible()) out.push_back(std::move(rep));
  }
  return out;
}

struct ArithmeticFacts {
  std::int64_t u = 0;
  std::vector<std::int64_t> differences;  // y_i - y_{i-1}, i = 1..s
  std::vector<std::int64_t> ratios;       // y_i / y_{i-1}, i = 1..s
};

/// Re-derives the y-sequence arithmetic of a feasible report and fails loudly
/// if any of it does not hold.
inline ArithmeticFacts arithmetic_facts(const FeasibilityReport& rep) {
  if (!rep.feasible()) throw infeasible_error("arithmetic facts need a feasible report");
  const auto& chain = rep.chain;
  const auto& y = *rep.y;
  ArithmeticFacts facts;
  facts.u = *rep.u;
  const Wide vm1 = chain.v() - 1;
  for (int i = 0; i <= chain.s(); ++i) {
    if (std::gcd(y[i], facts.u) != 1) {
      throw internal_error("y_" + std::to_string(i) + " shares a factor with u");
    }
    // y_i = 1 + u (c_i - 1)/d
    if (Wide{y[i] - 1} * rep.d != Wide{facts.u} * (chain.class_size(i) - 1)) {
      throw internal_error("y_" + std::to_string(i) + " disagrees with 1 + u(c_i - 1)/d");
    }
  }
  for (int i = 1; i <= chain.s(); ++i) {
    const auto diff = y[i] - y[i - 1];
    // (y_i - y_{i-1})(v - 1) = (k - 1)(e_i - 1) c_{i-1}
    if (Wide{diff} * vm1 != Wide{rep.k - 1} * (chain.e(i) - 1) * chain.class_size(i - 1)) {
      throw internal_error("difference formula fails at i = " + std::to_string(i));
    }
    if (y[i] % y[i - 1] != 0) throw internal_error("y_{i-1} does not divide y_i");
    const auto ratio = y.ratio(i);
    if (!(1 < ratio && ratio < chain.e(i))) {
      throw internal_error("ratio y_i/y_{i-1} not strictly between 1 and e_i");
    }
    facts.differences.push_back(diff);
    facts.ratios.push_back(ratio);
  }
  return facts;
}

}  // namespace chaindesign
