#pragma once

// Two independent ways to confirm a block set is a 2-design (the array
// identities over class intersection counts, and literal pair counting),
// plus flag-transitivity and uniqueness certificates.

#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "chaindesign/array.hpp"
#include "chaindesign/bigint.hpp"
#include "chaindesign/block.hpp"
#include "chaindesign/chain.hpp"
#include "chaindesign/design.hpp"
#include "chaindesign/feasibility.hpp"
#include "chaindesign/wreath.hpp"

namespace chaindesign {

struct LevelIdentity {
  int level = 0;
  BigInt lhs;       // sum over classes of the level below, from the array
  BigInt rhs_num;   // k(k-1)(e_i - 1)c_{i-1}
  BigInt rhs_den;   // v - 1
  bool holds = false;
};

struct ArrayTestResult {
  std::vector<LevelIdentity> levels;
  std::optional<int> first_failing;

  bool pass() const { return !first_failing.has_value(); }
};

/// For the orbit of B under W, the 2-design test on B's array alone:
///   sum_{C in C_1} x_C (x_C - 1)            = k(k-1)(e_1 - 1)/(v - 1)
///   sum_{C in C_{i-1}} x_C (x_{C+} - x_C)   = k(k-1)(e_i - 1)c_{i-1}/(v - 1),  2 <= i <= s
inline ArrayTestResult check_2design_arrays(const ChainSpec& chain, const Block& b) {
  validate_block(chain, b);
  const auto a = array_of(chain, b);
  const std::int64_t k = static_cast<std::int64_t>(b.size());
  ArrayTestResult out;
  for (int i = 1; i <= chain.s(); ++i) {
    LevelIdentity id;
    id.level = i;
    if (i == 1) {
      for (auto [idx, x] : a.level(1)) id.lhs += to_big(x) * (x - 1);
    } else {
      for (auto [idx, x] : a.level(i - 1)) {
        const auto parent = a.value(i, idx / chain.e(i));
        id.lhs += to_big(x) * (parent - x);
      }
    }
    id.rhs_num = to_big(k) * (k - 1) * (chain.e(i) - 1) * to_big(chain.class_size(i - 1));
    id.rhs_den = to_big(chain.v() - 1);
    id.holds = id.lhs * id.rhs_den == id.rhs_num;
    if (!id.holds && !out.first_failing) out.first_failing = i;
    out.levels.push_back(std::move(id));
  }
  return out;
}

struct BlockSetArrayResult {
  bool constant = false;
  std::optional<BigInt> lambda;
  std::string witness;  // first class whose pair total breaks the pattern
};

/// Array test for an arbitrary block list, not necessarily an orbit.  For
/// each class C at level i the blocks' arrays give
///   D(C) = sum_B [ x_C(x_C - 1) - sum_{C' subclass of C} x_C'(x_C' - 1) ],
/// the number of (block, ordered pair) incidences for pairs whose smallest
/// common class is C.  A 2-design has D(C) = lambda c_i (c_i - c_{i-1})
/// for every class at every level.
inline BlockSetArrayResult check_block_set_arrays(const ChainSpec& chain,
                                                  const std::vector<Block>& blocks) {
  std::vector<std::vector<BigInt>> totals;
  for (int i = 0; i <= chain.s(); ++i) {
    totals.emplace_back(static_cast<std::size_t>(i == 0 ? 0 : chain.class_count(i)));
  }
  for (const auto& b : blocks) {
    const auto a = array_of(chain, b);
    for (int i = 1; i <= chain.s(); ++i) {
      for (auto [idx, x] : a.level(i)) {
        const auto pairs = x * (x - 1);
        totals[static_cast<std::size_t>(i)][static_cast<std::size_t>(idx)] += pairs;
        if (i < chain.s()) {
          totals[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(idx / chain.e(i + 1))] -= pairs;
        }
      }
    }
  }
  BlockSetArrayResult out;
  for (int i = 1; i <= chain.s(); ++i) {
    const auto ci = chain.class_size(i);
    const BigInt pair_count = to_big(ci) * (ci - chain.class_size(i - 1));
    const auto& level = totals[static_cast<std::size_t>(i)];
    for (std::size_t idx = 0; idx < level.size(); ++idx) {
      const auto& total = level[idx];
      const auto where = format_class(class_from_index(chain, i, static_cast<std::int64_t>(idx)));
      if (!divides(pair_count, total)) {
        out.witness = where + " pair total " + to_decimal(total) + " not a multiple of " +
                      to_decimal(pair_count);
        return out;
      }
      const BigInt lambda = total / pair_count;
      if (!out.lambda) {
        out.lambda = lambda;
      } else if (*out.lambda != lambda) {
        out.witness = where + " gives lambda " + to_decimal(lambda) + " against " +
                      to_decimal(*out.lambda);
        out.lambda.reset();
        return out;
      }
    }
  }
  out.constant = true;
  return out;
}

/// Counts, for every unordered pair of distinct points, the blocks that
/// contain it.
class PairCounter {
 public:
  explicit PairCounter(std::int64_t v)
      : v_(v), counts_(static_cast<std::size_t>(v * (v - 1) / 2), 0) {}

  void add(const Block& b) {
    const auto r = b.ranks();
    for (std::size_t j = 1; j < r.size(); ++j) {
      const auto base = static_cast<std::size_t>(r[j] * (r[j] - 1) / 2);
      for (std::size_t i = 0; i < j; ++i) ++counts_[base + static_cast<std::size_t>(r[i])];
    }
  }

  void merge(const PairCounter& other) {
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  }

  std::int64_t count(Rank p, Rank q) const {
    if (p > q) std::swap(p, q);
    return counts_[static_cast<std::size_t>(q * (q - 1) / 2 + p)];
  }

  std::int64_t pairs() const { return static_cast<std::int64_t>(counts_.size()); }
  std::int64_t min() const { return counts_.empty() ? 0 : *std::min_element(counts_.begin(), counts_.end()); }
  std::int64_t max() const { return counts_.empty() ? 0 : *std::max_element(counts_.begin(), counts_.end()); }
  bool constant() const { return min() == max(); }
  std::int64_t v() const { return v_; }

 private:
  std::int64_t v_;
  std::vector<std::int64_t> counts_;
};

inline PairCounter brute_force_pair_count(const ChainSpec& chain, const std::vector<Block>& blocks) {
  PairCounter counter(chain.v());
  for (const auto& b : blocks) {
    validate_block(chain, b);
    counter.add(b);
  }
  return counter;
}

/// First (block, class) whose intersection size is neither 0 nor y_i.
inline std::optional<std::string> intersection_law_violation(const ChainSpec& chain,
                                                             const UniformSequence& y,
                                                             const Block& b) {
  const auto a = array_of(chain, b);
  for (int i = 1; i <= chain.s(); ++i) {
    for (auto [idx, x] : a.level(i)) {
      if (x != y[i]) {
        return "block {" + join(b, " ") + "} meets " + format_class(class_from_index(chain, i, idx)) +
               " in " + std::to_string(x) + " points, expected 0 or " + std::to_string(y[i]);
      }
    }
  }
  return std::nullopt;
}

enum class CertMode { exhaustive, arithmetic, sampled };

inline const char* to_string(CertMode m) {
  switch (m) {
    case CertMode::exhaustive: return "exhaustive";
    case CertMode::arithmetic: return "arithmetic";
    case CertMode::sampled: return "sampled";
  }
  return "?";
}

struct Check {
  std::string name;
  bool pass = false;
  std::string witness;
};

struct VerificationCertificate {
  ChainSpec chain;
  std::int64_t k = 0;
  CertMode mode = CertMode::exhaustive;
  std::optional<std::uint64_t> seed;  // set whenever anything was sampled
  std::vector<Check> checks;
  std::optional<BigInt> lambda_observed;
  std::optional<std::size_t> orbit_size;  // flag orbit, when one was computed

  bool passed() const {
    return !checks.empty() &&
           std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }

  void add(std::string name, bool pass, std::string witness = {}) {
    checks.push_back({std::move(name), pass, std::move(witness)});
  }

  /// key=value lines, one check per line.
  std::string to_text() const {
    std::ostringstream out;
    out << "chain=" << join(chain.radices()) << '\n' << "k=" << k << '\n' << "mode=" << to_string(mode) << '\n';
    if (seed) out << "seed=" << *seed << '\n';
    if (lambda_observed) out << "lambda_observed=" << to_decimal(*lambda_observed) << '\n';
    for (const auto& c : checks) {
      out << "check." << c.name << '=' << (c.pass ? "pass" : "fail");
      if (!c.witness.empty()) out << ' ' << c.witness;
      out << '\n';
    }
    out << "result=" << (passed() ? "pass" : "fail") << '\n';
    return out.str();
  }
};

enum class VerifyMode { automatic, exhaustive, arithmetic };

struct VerifyOptions {
  VerifyMode mode = VerifyMode::automatic;
  BigInt enumeration_cap = kDefaultEnumerationCap;
  std::size_t orbit_cap = 1'000'000;
  std::uint64_t seed = 1;
  int samples = 32;
};

namespace detail {

inline bool exhaustive_allowed(const DesignSpec& spec, const VerifyOptions& opt) {
  if (opt.mode == VerifyMode::arithmetic) return false;
  return spec.b <= opt.enumeration_cap && spec.b * spec.k <= BigInt(static_cast<unsigned long>(opt.orbit_cap));
}

inline void add_sampled_block_checks(VerificationCertificate& cert, const DesignSpec& spec,
                                     const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  const auto canon = canonical_block(spec.chain, spec.y);
  cert.seed = opt.seed;
  bool images_uniform = true;
  std::string witness;
  for (int t = 0; t < opt.samples && images_uniform; ++t) {
    const auto g = random_chain_permutation(spec.chain, rng);
    const auto image = g.apply(canon);
    auto uni = is_uniform(spec.chain, image);
    if (!std::holds_alternative<UniformSequence>(uni) || std::get<UniformSequence>(uni) != spec.y) {
      images_uniform = false;
      witness = "image {" + join(image, " ") + "}";
    }
  }
  cert.add("sampled_images_uniform", images_uniform, witness);

  bool members = true;
  witness.clear();
  for (int t = 0; t < opt.samples && members; ++t) {
    const auto b = random_uniform_block(spec.chain, spec.y, rng);
    try {
      const auto g = transporter(spec.chain, b);
      members = g.apply(canon) == b;
    } catch (const std::exception& ex) {
      members = false;
      witness = ex.what();
    }
    if (!members && witness.empty()) witness = "block {" + join(b, " ") + "}";
  }
  cert.add("sampled_orbit_membership", members, witness);
}

}  // namespace detail

/// Exhaustive: the flag orbit of (least point, canonical block) under the
/// wreath generators has exactly b*k flags.  Otherwise: the canonical
/// block's stabiliser is transitive on it and sampled uniform blocks lie in
/// its orbit.
inline VerificationCertificate certify_flag_transitive(const ChainSpec& chain, std::int64_t k,
                                                       const VerifyOptions& opt = {}) {
  const auto spec = design_spec(chain, k);
  const auto canon = canonical_block(chain, spec.y);
  VerificationCertificate cert{chain, k, CertMode::arithmetic, {}, {}, {}, {}};
  cert.add("stabilizer_transitive", stabilizer_transitive_on_block(chain, canon));
  if (detail::exhaustive_allowed(spec, opt)) {
    cert.mode = CertMode::exhaustive;
    const auto gens = wreath_generators(chain);
    const auto flags = orbit(Flag{*canon.begin(), canon}, gens, opt.orbit_cap);
    const BigInt expected = spec.b * k;
    const BigInt found = static_cast<unsigned long>(flags.elements.size());
    if (flags.complete) cert.orbit_size = flags.elements.size();
    cert.add("flag_orbit", flags.complete && found == expected,
             "size=" + to_decimal(found) + " expected=" + to_decimal(expected));
  } else {
    detail::add_sampled_block_checks(cert, spec, opt);
  }
  return cert;
}

/// The uniform subsets with sequence y are exactly the W-orbit of the
/// canonical block.  Over the caps, sampled uniform subsets are shown to be
/// images of the canonical block instead.
inline VerificationCertificate certify_uniqueness(const ChainSpec& chain, std::int64_t k,
                                                  const VerifyOptions& opt = {}) {
  const auto spec = design_spec(chain, k);
  VerificationCertificate cert{chain, k, CertMode::sampled, {}, {}, {}, {}};
  const bool small = opt.mode != VerifyMode::arithmetic && spec.b <= opt.enumeration_cap &&
                     spec.b <= BigInt(static_cast<unsigned long>(opt.orbit_cap));
  if (!small) {
    std::mt19937_64 rng(opt.seed);
    cert.seed = opt.seed;
    const auto canon = canonical_block(chain, spec.y);
    bool ok = true;
    std::string witness;
    for (int t = 0; t < opt.samples && ok; ++t) {
      const auto b = random_uniform_block(chain, spec.y, rng);
      ok = transporter(chain, b).apply(canon) == b;
      if (!ok) witness = "uniform block outside orbit {" + join(b, " ") + "}";
    }
    cert.add("sampled_containment", ok, witness);
    return cert;
  }
  cert.mode = CertMode::exhaustive;
  const auto blocks = enumerate_blocks(chain, spec.y, opt.enumeration_cap);
  const auto gens = wreath_generators(chain);
  const auto orb = orbit(canonical_block(chain, spec.y), gens, opt.orbit_cap);
  std::unordered_set<Block> in_orbit(orb.elements.begin(), orb.elements.end());
  std::string witness;
  bool equal = orb.complete && in_orbit.size() == blocks.size();
  for (const auto& b : blocks) {
    if (!in_orbit.count(b)) {
      equal = false;
      witness = "uniform block outside orbit {" + join(b, " ") + "}";
      break;
    }
  }
  cert.add("orbit_equals_uniform_family", equal,
           witness.empty() ? "uniform=" + std::to_string(blocks.size()) +
                                 " orbit=" + std::to_string(orb.elements.size())
                           : witness);
  return cert;
}

struct VerifyResult {
  DesignSpec spec;
  VerificationCertificate certificate;
  std::optional<std::size_t> flag_orbit;  // set in exhaustive mode
};

/// Everything `verify` reports: array identities on the canonical block,
/// and then either pair counting over the enumerated block set plus the
/// flag orbit, or the arithmetic/sampled certificates.
inline VerifyResult verify_design(const ChainSpec& chain, std::int64_t k, const VerifyOptions& opt = {}) {
  VerifyResult out{design_spec(chain, k), {}, {}};
  const auto& spec = out.spec;
  auto& cert = out.certificate;
  cert.chain = chain;
  cert.k = k;
  const auto canon = canonical_block(chain, spec.y);

  const auto arrays = check_2design_arrays(chain, canon);
  cert.add("array_identities", arrays.pass(),
           arrays.pass() ? "" : "level " + std::to_string(*arrays.first_failing));

  if (detail::exhaustive_allowed(spec, opt)) {
    cert.mode = CertMode::exhaustive;
    PairCounter counter(chain.v());
    std::unordered_set<Block> seen;
    std::optional<std::string> law;
    std::size_t listed = 0;
    for_each_block(chain, spec.y, [&](const Block& b) {
      ++listed;
      counter.add(b);
      seen.insert(b);
      if (!law) law = intersection_law_violation(chain, spec.y, b);
    }, opt.enumeration_cap);
    cert.add("block_count", BigInt(static_cast<unsigned long>(listed)) == spec.b &&
                                seen.size() == listed,
             "listed=" + std::to_string(listed) + " distinct=" + std::to_string(seen.size()));
    cert.add("intersection_law", !law.has_value(), law.value_or(""));
    cert.lambda_observed = BigInt(static_cast<long>(counter.min()));
    cert.add("pair_counts_constant", counter.constant(),
             "min=" + std::to_string(counter.min()) + " max=" + std::to_string(counter.max()));
    cert.add("lambda_matches", counter.constant() && *cert.lambda_observed == spec.lambda,
             "observed=" + std::to_string(counter.min()) + " expected=" + to_decimal(spec.lambda));

    const auto ft = certify_flag_transitive(chain, k, opt);
    for (const auto& c : ft.checks) cert.checks.push_back(c);
    out.flag_orbit = ft.orbit_size;
    const auto uq = certify_uniqueness(chain, k, opt);
    for (const auto& c : uq.checks) cert.checks.push_back(c);
  } else {
    cert.mode = CertMode::arithmetic;
    if (opt.mode == VerifyMode::exhaustive) cert.add("exhaustive", true, "skipped(cap-exceeded)");
    cert.add("stabilizer_transitive", stabilizer_transitive_on_block(chain, canon));
    detail::add_sampled_block_checks(cert, spec, opt);
  }
  return out;
}

}  // namespace chaindesign
