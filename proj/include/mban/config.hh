#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mban {

// A global state x in {0,1}^n, packed 64 bits per word. Word 0 holds bits
// 0..63 with bit i at (1 << i), so for n <= 64 the single word *is* the
// integer value of the configuration under the bit-0-least-significant
// enumeration order used throughout.
struct Config {
  int n = 0;
  std::vector<std::uint64_t> w;

  Config() = default;
  explicit Config(int n_) : n(n_), w((n_ + 63) / 64, 0) {}
  Config(int n_, std::uint64_t value) : Config(n_) {
    if (!w.empty()) w[0] = value & tail_mask(n_, 0);
  }

  static std::uint64_t tail_mask(int n, std::size_t word) {
    int lo = static_cast<int>(word) * 64;
    if (n - lo >= 64) return ~std::uint64_t(0);
    if (n - lo <= 0) return 0;
    return (std::uint64_t(1) << (n - lo)) - 1;
  }

  bool get(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  void set(int i, bool v) {
    std::uint64_t m = std::uint64_t(1) << (i & 63);
    if (v)
      w[i >> 6] |= m;
    else
      w[i >> 6] &= ~m;
  }

  int popcount() const;
  bool all_zero() const;
  bool all_one() const;
  Config complement() const;

  // Integer value for n <= 64 (bit 0 least significant).
  std::uint64_t value() const { return w.empty() ? 0 : w[0]; }

  bool operator==(const Config& o) const { return n == o.n && w == o.w; }
  bool operator!=(const Config& o) const { return !(*this == o); }
  bool operator<(const Config& o) const;  // by integer value (little-endian words)

  std::string to_string() const;  // index 0 leftmost
  static Config from_string(const std::string& s);  // throws std::invalid_argument

  static Config uniform(int n, bool v) {
    Config c(n);
    if (v)
      for (std::size_t k = 0; k < c.w.size(); ++k) c.w[k] = tail_mask(n, k);
    return c;
  }
};

struct ConfigHash {
  std::size_t operator()(const Config& c) const {
    std::uint64_t h = 0xcbf29ce484222325ull ^ std::uint64_t(c.n);
    for (std::uint64_t word : c.w) {
      h ^= word;
      h *= 0x100000001b3ull;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace mban
