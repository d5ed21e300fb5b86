#pragma once

#include <array>
#include <cstdint>

namespace pinning {

/// Philox4x32-10 counter-based generator: a keyed bijection of a 128-bit
/// counter. Every draw is addressable by (key, counter), so results do not
/// depend on evaluation order or thread schedule.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key);
};

/// Uniform double in the open interval (0, 1) from 64 random bits.
inline double to_open_unit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

/// 64 random bits addressed by (seed, stream, index).
std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Child seed derived by hashing (seed, index); used for replica panels.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Sequential view over one counter stream, for consumers that need an
/// unbounded number of draws (path sampling).
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  double uniform() { return to_open_unit(counter_bits(seed_, stream_, next_++)); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t next_ = 0;
};

}  // namespace pinning
