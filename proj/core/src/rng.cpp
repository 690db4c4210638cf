#include "spheredpp/rng.hpp"

namespace spheredpp {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace

std::uint64_t derive_seed(std::uint64_t root_seed, std::string_view stream_name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : stream_name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(splitmix64(root_seed) ^ h);
}

Rng::Rng(std::uint64_t seed) : seed_(seed) {
  // Expand the 64-bit seed so nearby seeds give unrelated mt19937_64 states.
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(splitmix64(seed)),
                    static_cast<std::uint32_t>(splitmix64(seed) >> 32)};
  engine_.seed(seq);
}

Rng Rng::stream(std::uint64_t root_seed, std::string_view name) {
  return Rng(derive_seed(root_seed, name));
}

} // namespace spheredpp
