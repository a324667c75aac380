#pragma once

#include <cstdint>
#include <string_view>

namespace aga {

// Seed derivation and random draws are pinned to these exact bit-level
// recipes so that a (dataset, seed, config) triple reproduces every output
// byte across runs and machines. No std:: distribution is used anywhere:
// their output is implementation-defined.

inline constexpr uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ull;
inline constexpr uint64_t kFnvPrime = 0x100000001b3ull;

inline uint64_t fnv1a64(std::string_view bytes, uint64_t h = kFnvOffsetBasis) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

// Feeds an integer as 8 little-endian bytes.
inline uint64_t fnv1a64_u64(uint64_t value, uint64_t h = kFnvOffsetBasis) {
  for (int i = 0; i < 8; ++i) {
    h ^= static_cast<unsigned char>(value >> (8 * i));
    h *= kFnvPrime;
  }
  return h;
}

inline uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic splitmix64 stream with unbiased bounded draws.
class SeededRng {
 public:
  explicit SeededRng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() { return splitmix64(state_); }

  // Uniform in [0, n), unbiased via rejection of the tail range.
  uint64_t uniform_index(uint64_t n) {
    const uint64_t threshold = (0 - n) % n;
    for (;;) {
      const uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  // Uniform double in [lo, hi) with 53 bits of mantissa.
  double uniform_real(double lo, double hi) {
    const double unit = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return lo + unit * (hi - lo);
  }

  bool coin() { return (next_u64() >> 63) != 0; }

 private:
  uint64_t state_;
};

// Named substream so independent pipeline stages can draw without
// perturbing each other's sequences.
inline uint64_t derive_seed(uint64_t parent, std::string_view stream_name) {
  return fnv1a64(stream_name, fnv1a64_u64(parent));
}

}  // namespace aga
