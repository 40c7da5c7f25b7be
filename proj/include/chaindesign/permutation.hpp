#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chaindesign/block.hpp"
#include "chaindesign/chain.hpp"
#include "chaindesign/text.hpp"

namespace chaindesign {

/// Describes the first way `images` fails to be a bijection of P that maps
/// every class of every level onto a class of the same level.
inline std::optional<std::string> chain_violation(const ChainSpec& chain,
                                                  std::span<const Rank> images) {
  const auto v = chain.v();
  if (static_cast<std::int64_t>(images.size()) != v) {
    return "image array has " + std::to_string(images.size()) + " entries, expected " +
           std::to_string(v);
  }
  std::vector<char> hit(static_cast<std::size_t>(v), 0);
  for (std::int64_t r = 0; r < v; ++r) {
    const Rank img = images[static_cast<std::size_t>(r)];
    if (img < 0 || img >= v) return "image of #" + std::to_string(r) + " out of range";
    if (hit[static_cast<std::size_t>(img)]++) return "#" + std::to_string(img) + " hit twice";
  }
  for (int level = 1; level < chain.s(); ++level) {
    const auto size = chain.class_size(level);
    for (std::int64_t idx = 0; idx < chain.class_count(level); ++idx) {
      const auto target = class_index(chain, images[static_cast<std::size_t>(idx * size)], level);
      for (std::int64_t r = idx * size; r < (idx + 1) * size; ++r) {
        if (class_index(chain, images[static_cast<std::size_t>(r)], level) != target) {
          return "class " + format_class(class_from_index(chain, level, idx)) +
                 " is not mapped onto a class";
        }
      }
    }
  }
  return std::nullopt;
}

/// A permutation of P preserving every partition of the chain.  Acts on the
/// right: (p^g)^h = p^(gh).
class ChainPermutation {
 public:
  ChainPermutation() = default;

  static ChainPermutation identity(const ChainSpec& chain) {
    std::vector<Rank> images(static_cast<std::size_t>(chain.v()));
    for (std::size_t r = 0; r < images.size(); ++r) images[r] = static_cast<Rank>(r);
    return ChainPermutation(chain, std::move(images));
  }

  static ChainPermutation from_images(const ChainSpec& chain, std::vector<Rank> images) {
    if (auto why = chain_violation(chain, images)) throw chain_error("not a chain permutation: " + *why);
    return ChainPermutation(chain, std::move(images));
  }

  /// One-line image array, e.g. "1 0 2 3".
  static ChainPermutation parse(const ChainSpec& chain, std::string_view text) {
    std::vector<Rank> images;
    std::size_t pos = 0;
    while (pos < text.size()) {
      while (pos < text.size() && text[pos] == ' ') ++pos;
      if (pos == text.size()) break;
      auto end = text.find(' ', pos);
      if (end == std::string_view::npos) end = text.size();
      images.push_back(parse_int(text.substr(pos, end - pos)));
      pos = end;
    }
    return from_images(chain, std::move(images));
  }

  const ChainSpec& chain() const { return chain_; }
  std::span<const Rank> images() const { return images_; }
  Rank operator()(Rank r) const { return images_[static_cast<std::size_t>(r)]; }

  Block apply(const Block& b) const {
    std::vector<Rank> out;
    out.reserve(b.size());
    for (Rank r : b) out.push_back((*this)(r));
    std::sort(out.begin(), out.end());
    return Block::from_sorted(std::move(out));
  }

  /// This permutation followed by `next`.
  ChainPermutation then(const ChainPermutation& next) const {
    std::vector<Rank> out(images_.size());
    for (std::size_t r = 0; r < out.size(); ++r) out[r] = next(images_[r]);
    return ChainPermutation(chain_, std::move(out));
  }

  ChainPermutation inverse() const {
    std::vector<Rank> out(images_.size());
    for (std::size_t r = 0; r < out.size(); ++r) out[static_cast<std::size_t>(images_[r])] = static_cast<Rank>(r);
    return ChainPermutation(chain_, std::move(out));
  }

  bool is_identity() const {
    for (std::size_t r = 0; r < images_.size(); ++r) {
      if (images_[r] != static_cast<Rank>(r)) return false;
    }
    return true;
  }

  std::string to_string() const { return join(images_, " "); }

  friend bool operator==(const ChainPermutation&, const ChainPermutation&) = default;

 private:
  ChainPermutation(ChainSpec chain, std::vector<Rank> images)
      : chain_(std::move(chain)), images_(std::move(images)) {}

  ChainSpec chain_;
  std::vector<Rank> images_;
};

}  // namespace chaindesign
