#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>

namespace stablerep {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
/// Output depends only on (counter, key), so any draw can be recomputed in isolation.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter generate(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

/// 53-bit uniform in [0, 1) from two 32-bit words.
constexpr double unit_from_words(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = ((std::uint64_t{hi} << 32) | lo) >> 11;
  return static_cast<double>(bits) * 0x1.0p-53;
}

/// Exp(1) by inversion; u in [0, 1) keeps the argument of log1p above -1.
/// Scalar reference for the batched exponentials of fill_draw_block.
inline double exponential_from_unit(double u) { return -std::log1p(-u); }

/// One independent stream of a seeded Philox generator.
///
/// Layout: the 64-bit seed is the key; the 128-bit counter is (draw index, stream id),
/// low words first. Samplers use stream id = sample index and draw index = term index,
/// so every sample is reproducible regardless of how samples are scheduled on threads.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_lo_(static_cast<std::uint32_t>(stream)),
        stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

  Philox4x32::Counter block(std::uint64_t draw) const {
    return Philox4x32::generate({static_cast<std::uint32_t>(draw),
                                 static_cast<std::uint32_t>(draw >> 32), stream_lo_, stream_hi_},
                                key_);
  }

 private:
  Philox4x32::Key key_;
  std::uint32_t stream_lo_;
  std::uint32_t stream_hi_;
};

inline constexpr std::size_t kDrawBlock = 64;

/// Draws [first, first + kDrawBlock) of a stream, first = block * kDrawBlock.
/// Words 0-1 of each Philox block give an Exp(1) variate, words 2-3 a label uniform.
struct DrawBlock {
  alignas(64) double exponential[kDrawBlock];
  alignas(64) double label_unit[kDrawBlock];
};

/// The exponentials are -log(1 - u) evaluated as one SIMD batch; 1 - u is exact for the
/// 53-bit grid, and the result agrees with exponential_from_unit to a few ulp.
void fill_draw_block(const CounterStream& rng, std::uint64_t block, DrawBlock& out);

/// SplitMix64 finalizer; used to derive independent seeds from one user seed.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + (k + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace stablerep
