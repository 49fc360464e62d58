#pragma once

#include <array>
#include <cstdint>

namespace ramix {

// splitmix64 step: advances `state` and returns a mixed 64-bit value.
// Used for seeding and for deriving independent substreams.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic 64-bit generator (xoshiro256++). One fixed algorithm is used
// across the whole pipeline so that a (seed, stream) pair pins every random
// draw. Substreams are derived by hashing (master_seed, stream_id), which
// makes per-item generation order-independent: generating items in parallel
// or out of order yields the same bytes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64_next(sm);
  }

  static Rng substream(std::uint64_t master_seed, std::uint64_t stream_id) {
    std::uint64_t a = master_seed;
    std::uint64_t b = stream_id ^ 0xd1b54a32d192ed03ULL;
    const std::uint64_t ha = splitmix64_next(a);
    const std::uint64_t hb = splitmix64_next(b);
    return Rng(ha ^ (hb << 1 | hb >> 63));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi). Degenerate interval (lo == hi) returns lo.
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n), unbiased (rejection). n must be > 0.
  std::uint64_t uniform_below(std::uint64_t n) {
    const std::uint64_t limit = (0ULL - n) % n;  // 2^64 mod n
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x < limit);
    return x % n;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace ramix
