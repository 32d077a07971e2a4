#pragma once

#include <cstdint>
#include <cmath>

namespace powercone {

// splitmix64: seeding and per-restart stream derivation. Restart r of a run
// with global seed s draws from Xoshiro seeded with hash_seed(s, r), so
// parallel schedules cannot change results.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t hash_seed(uint64_t global_seed, uint64_t index) {
  uint64_t s = global_seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  splitmix64(s);
  return splitmix64(s);
}

class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t s = seed;
    for (auto& w : st_) w = splitmix64(s);
    have_spare_ = false;
  }

  uint64_t next_u64() {
    // xoshiro256**
    const uint64_t r = rotl(st_[1] * 5, 7) * 9;
    const uint64_t t = st_[1] << 17;
    st_[2] ^= st_[0];
    st_[3] ^= st_[1];
    st_[1] ^= st_[2];
    st_[0] ^= st_[3];
    st_[2] ^= t;
    st_[3] = rotl(st_[3], 45);
    return r;
  }

  // uniform in (0,1)
  double uniform() {
    return ((next_u64() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // standard normal, Box-Muller (platform-independent, unlike
  // std::normal_distribution)
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double th = 6.283185307179586476925287 * u2;
    spare_ = r * std::sin(th);
    have_spare_ = true;
    return r * std::cos(th);
  }

  long uniform_int(long lo, long hi) {  // inclusive bounds
    return lo + static_cast<long>(next_u64() % static_cast<uint64_t>(hi - lo + 1));
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t st_[4];
  double spare_ = 0.0;
  bool have_spare_;
};

}  // namespace powercone
