#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace turan {

// Fixed-capacity bit vector used for edge indicators. Word 0 holds bits 0..63.
struct BitVec {
  std::vector<std::uint64_t> w;

  explicit BitVec(std::size_t nbits = 0) : w((nbits + 63) / 64, 0) {}

  bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i) { w[i >> 6] |= std::uint64_t(1) << (i & 63); }
  void reset(std::size_t i) { w[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
  void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w) c += static_cast<std::size_t>(__builtin_popcountll(x));
    return c;
  }

  bool operator==(const BitVec& o) const { return w == o.w; }

  // Lexicographic on the bit sequence b0, b1, ...: the first differing bit
  // decides, 0 before 1.
  std::strong_ordering operator<=>(const BitVec& o) const {
    std::size_t n = w.size() < o.w.size() ? w.size() : o.w.size();
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t d = w[i] ^ o.w[i];
      if (d) {
        int t = __builtin_ctzll(d);
        return ((w[i] >> t) & 1) ? std::strong_ordering::greater
                                 : std::strong_ordering::less;
      }
    }
    return w.size() <=> o.w.size();
  }

  std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ (w.size() * 0xff51afd7ed558ccdull);
    for (auto x : w) {
      h ^= x;
      h *= 0xff51afd7ed558ccdull;
      h ^= h >> 33;
    }
    return static_cast<std::size_t>(h);
  }
};

struct BitVecHash {
  std::size_t operator()(const BitVec& b) const { return b.hash(); }
};

// Compare two equally long bit windows treated as bit sequences, low index
// first. Returns -1, 0, 1.
inline int cmp_bits64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t d = a ^ b;
  if (!d) return 0;
  int t = __builtin_ctzll(d);
  return ((a >> t) & 1) ? 1 : -1;
}

}  // namespace turan
