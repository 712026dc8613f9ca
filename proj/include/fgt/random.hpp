#pragma once

#include <cstdint>
#include <random>

namespace fgt {

using Engine = std::mt19937_64;

/// A root seed plus a hashed derivation path.
///
/// Sub-streams are derived hierarchically (experiment -> replicate -> sample
/// -> bootstrap), so a value obtained through the same chain of `child` calls
/// always yields the same engine state, independent of the order in which
/// other streams were consumed.
class RandomSeed {
 public:
  RandomSeed() = default;
  explicit RandomSeed(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_; }

  RandomSeed child(std::uint64_t index) const noexcept;
  Engine engine() const;

  friend bool operator==(const RandomSeed&, const RandomSeed&) = default;

 private:
  RandomSeed(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream) {}

  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// 53-bit uniform in [0, 1); never returns 1, so `uniform01(e) < 1.0` always
// holds and `< 0.0` never does.
inline double uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace fgt
