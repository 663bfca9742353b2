#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace igac {

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
// A draw is a pure function of (seed, stream, index), so any number of
// workers can evaluate disjoint index ranges and produce the same values
// as a single-threaded sweep.
class CounterRng {
 public:
  explicit CounterRng(uint64_t seed) : seed_(seed) {}

  uint64_t seed() const { return seed_; }

  /// Four raw 32-bit words for block `index` of substream `stream`.
  std::array<uint32_t, 4> block(uint64_t stream, uint64_t index) const {
    std::array<uint32_t, 4> ctr = {
        static_cast<uint32_t>(index), static_cast<uint32_t>(index >> 32),
        static_cast<uint32_t>(stream), static_cast<uint32_t>(stream >> 32)};
    std::array<uint32_t, 2> key = {static_cast<uint32_t>(seed_),
                                   static_cast<uint32_t>(seed_ >> 32)};
    for (int round = 0; round < 10; ++round) {
      ctr = one_round(ctr, key);
      key[0] += 0x9E3779B9u;
      key[1] += 0xBB67AE85u;
    }
    return ctr;
  }

  /// Two doubles in (0,1), 53-bit resolution, from one block.
  std::array<double, 2> uniform_pair(uint64_t stream, uint64_t index) const {
    const auto b = block(stream, index);
    return {to_unit(b[0], b[1]), to_unit(b[2], b[3])};
  }

  double uniform(uint64_t stream, uint64_t index) const {
    return uniform_pair(stream, index)[0];
  }

  /// Two independent standard normals (Box-Muller) from one block.
  std::array<double, 2> normal_pair(uint64_t stream, uint64_t index) const {
    const auto u = uniform_pair(stream, index);
    const double r = std::sqrt(-2.0 * std::log(u[0]));
    const double phi = 2.0 * M_PI * u[1];
    return {r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  static std::array<uint32_t, 4> one_round(const std::array<uint32_t, 4>& c,
                                           const std::array<uint32_t, 2>& k) {
    const uint64_t p0 = 0xD2511F53ull * c[0];
    const uint64_t p1 = 0xCD9E8D57ull * c[2];
    const auto hi0 = static_cast<uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<uint32_t>(p0);
    const auto hi1 = static_cast<uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<uint32_t>(p1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }

  // 53 random bits into (0,1); offset by half an ulp so 0 never occurs.
  static double to_unit(uint32_t hi, uint32_t lo) {
    const uint64_t bits =
        (static_cast<uint64_t>(hi) << 21) ^ (static_cast<uint64_t>(lo) >> 11);
    return (static_cast<double>(bits & ((1ull << 53) - 1)) + 0.5) /
           9007199254740992.0;  // 2^53
  }

  uint64_t seed_;
};

}  // namespace igac
