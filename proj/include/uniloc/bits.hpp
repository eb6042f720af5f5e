#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace uniloc {

/// Fixed-capacity set of small indices (irreducibles of a finite frame).
class Bits {
 public:
  static constexpr std::size_t kCapacity = 128;

  constexpr Bits() = default;

  static Bits single(std::size_t i) {
    Bits b;
    b.set(i);
    return b;
  }
  static Bits first_n(std::size_t n) {
    Bits b;
    for (std::size_t i = 0; i < n; ++i) b.set(i);
    return b;
  }

  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }

  bool none() const { return (words_[0] | words_[1]) == 0; }
  bool any() const { return !none(); }
  std::size_t count() const {
    return static_cast<std::size_t>(std::popcount(words_[0]) + std::popcount(words_[1]));
  }

  bool subset_of(const Bits& o) const {
    return (words_[0] & ~o.words_[0]) == 0 && (words_[1] & ~o.words_[1]) == 0;
  }
  bool intersects(const Bits& o) const {
    return ((words_[0] & o.words_[0]) | (words_[1] & o.words_[1])) != 0;
  }

  Bits& operator&=(const Bits& o) {
    words_[0] &= o.words_[0];
    words_[1] &= o.words_[1];
    return *this;
  }
  Bits& operator|=(const Bits& o) {
    words_[0] |= o.words_[0];
    words_[1] |= o.words_[1];
    return *this;
  }
  Bits& operator-=(const Bits& o) {
    words_[0] &= ~o.words_[0];
    words_[1] &= ~o.words_[1];
    return *this;
  }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend Bits operator-(Bits a, const Bits& b) { return a -= b; }

  friend bool operator==(const Bits&, const Bits&) = default;
  friend auto operator<=>(const Bits&, const Bits&) = default;

  /// Calls fn(i) for every member, ascending.
  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < 2; ++w) {
      std::uint64_t word = words_[w];
      while (word != 0) {
        const int tz = std::countr_zero(word);
        fn(w * 64 + static_cast<std::size_t>(tz));
        word &= word - 1;
      }
    }
  }

  std::size_t hash() const {
    return std::hash<std::uint64_t>{}(words_[0] * 0x9e3779b97f4a7c15ULL ^ words_[1]);
  }

 private:
  std::array<std::uint64_t, 2> words_{};
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const { return b.hash(); }
};

}  // namespace uniloc
