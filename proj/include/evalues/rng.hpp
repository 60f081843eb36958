#pragma once

#include <cstdint>

namespace evalues {

// SplitMix64 (Steele, Lea, Flood 2014); used to expand seeds.
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

// xoshiro256++ (Blackman & Vigna 2019), state seeded through SplitMix64.
// Pure 64-bit integer arithmetic, so streams are identical on every platform.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm.next();
  }

  uint64_t next_u64() {
    uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform on the open interval (0, 1): (n + 0.5) * 2^-53 for n in [0, 2^53)
  double next_open01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t s_[4];
};

// Inverse of the standard normal distribution function; Wichura's algorithm
// AS 241 (PPND16), absolute error ~1e-16 on (0,1).
double inverse_normal_cdf(double p);

// Seeded N(mean, 1) stream: xoshiro256++ uniforms through the inverse CDF.
// Draws for a given seed are bit-identical across platforms, and shifting the
// mean shifts the draws exactly (location family).
class GaussianStream {
 public:
  explicit GaussianStream(uint64_t seed) : rng_(seed) {}
  double next(double mean = 0.0) {
    return mean + inverse_normal_cdf(rng_.next_open01());
  }

 private:
  Xoshiro256pp rng_;
};

}  // namespace evalues
