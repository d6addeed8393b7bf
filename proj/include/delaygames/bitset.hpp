#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace delaygames {

/// Fixed-width bit set backed by 64-bit words. The width is chosen at
/// construction; binary operations require operands of identical width.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t width() const { return bits_; }

  bool test(std::size_t i) const {
    assert(i < bits_);
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(std::size_t i) {
    assert(i < bits_);
    words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }

  Bitset& operator|=(const Bitset& o) {
    assert(bits_ == o.bits_);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
  }

  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  /// True iff o is a subset of this set.
  bool contains(const Bitset& o) const {
    assert(bits_ == o.bits_);
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (o.words_[w] & ~words_[w]) return false;
    return true;
  }

  /// Calls f(i) for every set bit, in increasing order of i.
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t m = words_[w];
      while (m) {
        f(w * 64 + static_cast<std::size_t>(std::countr_zero(m)));
        m &= m - 1;
      }
    }
  }

  friend bool operator==(const Bitset&, const Bitset&) = default;

  /// Total order on the word encoding, used to canonicalize collections.
  friend bool operator<(const Bitset& a, const Bitset& b) {
    assert(a.bits_ == b.bits_);
    return a.words_ < b.words_;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

namespace detail {

inline std::size_t hash_mix(std::size_t seed, std::uint64_t v) {
  return seed ^ (static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (seed << 6) +
                 (seed >> 2));
}

inline std::size_t hash_bitset(const Bitset& b) {
  std::size_t h = b.width();
  for (auto w : b.words()) h = hash_mix(h, w);
  return h;
}

}  // namespace detail
}  // namespace delaygames
