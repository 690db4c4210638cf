#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace spheredpp {

/// Mixes a root seed with a stream name into an independent 64-bit seed.
///
/// The mapping is fixed (FNV-1a over the name, splitmix64 finalizer), so the
/// same (root, name) pair yields the same stream on every platform.
std::uint64_t derive_seed(std::uint64_t root_seed, std::string_view stream_name);

/// Seeded random source. One instance per logical stream; not thread-safe.
class Rng {
public:
  explicit Rng(std::uint64_t seed);

  /// Stream derived from `root_seed` under a name such as "basis",
  /// "points" or "replicate:17".
  static Rng stream(std::uint64_t root_seed, std::string_view name);

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0,1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on [lo,hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

} // namespace spheredpp
