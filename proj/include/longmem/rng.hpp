#pragma once
#include <cstdint>
#include <random>

namespace longmem {

// Identifies one replication's stream: (master_seed, replication_index) pairs
// map to independent streams via splitmix64 mixing, so results do not depend
// on which thread runs which replication.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t replication_index = 0;
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// mt19937_64 core with hand-rolled scalar samplers.  The engine's output is
// pinned by the C++ standard, and the samplers avoid the (implementation-
// defined) libstdc++ distributions, so streams are bit-reproducible anywhere.
class Rng {
 public:
  explicit Rng(SeedSpec s) : engine_(mix(s)) {}
  explicit Rng(std::uint64_t raw_seed) : engine_(raw_seed) {}

  // [0, 1), 53-bit resolution
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // standard normal via Box-Muller (pair cached)
  double normal();

  std::uint64_t raw() { return engine_(); }

 private:
  static std::uint64_t mix(SeedSpec s) {
    std::uint64_t st = s.master_seed;
    std::uint64_t a = splitmix64(st);
    st = a ^ (0x9E3779B97F4A7C15ull * (s.replication_index + 1));
    return splitmix64(st);
  }
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace longmem
