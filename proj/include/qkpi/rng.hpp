#pragma once

#include <cstdint>

namespace qkpi {

// SplitMix64. Used everywhere instead of <random> engines so that results are
// bit-identical across platforms and standard library versions.
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Prng {
  public:
    explicit Prng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1) with 53 random bits
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // unbiased uniform integer in [0, n)
    uint64_t next_below(uint64_t n) {
        uint64_t threshold = (0 - n) % n;
        for (;;) {
            uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    bool next_bool() { return next_u64() >> 63; }

  private:
    uint64_t state_;
};

// Deterministic substream derivation. Every stochastic decision in the suite
// is keyed on (master seed, stream, item), so results do not depend on
// evaluation order or worker count.
inline uint64_t substream(uint64_t master, uint64_t stream, uint64_t item) {
    uint64_t h = mix64(master ^ 0x6a09e667f3bcc909ULL);
    h = mix64(h ^ (stream * 0xd6e8feb86659fd93ULL + 1));
    h = mix64(h ^ (item * 0xa5cb3d8d0f4f1b15ULL + 1));
    return h;
}

inline Prng substream_rng(uint64_t master, uint64_t stream, uint64_t item) {
    return Prng(substream(master, stream, item));
}

}  // namespace qkpi
