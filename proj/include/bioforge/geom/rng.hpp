#pragma once

#include <cstdint>

namespace bioforge::geom {

// splitmix64 counter PRNG. Integer-only state updates, so streams are
// identical on every platform for a given seed.
class Rng {
public:
    explicit Rng(uint64_t seed = 0) : state_(seed) {}

    uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo,hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Uniform integer in [0,n). n must be > 0.
    uint64_t next_below(uint64_t n) { return next_u64() % n; }

    uint64_t state() const { return state_; }

    // Independent child stream. Mixing is itself a splitmix step, so distinct
    // salts give uncorrelated streams and the derivation is reproducible.
    Rng derive(uint64_t salt) const {
        Rng mixer(state_ ^ (salt * 0xD1B54A32D192ED03ull));
        return Rng(mixer.next_u64());
    }

private:
    uint64_t state_;
};

// FNV-1a, used wherever a stable text hash seeds a stream.
inline uint64_t fnv1a64(const char* data, size_t n) {
    uint64_t h = 0xCBF29CE484222325ull;
    for (size_t i = 0; i < n; ++i) {
        h ^= static_cast<unsigned char>(data[i]);
        h *= 0x100000001B3ull;
    }
    return h;
}

template <typename S>
uint64_t fnv1a64(const S& s) { return fnv1a64(s.data(), s.size()); }

} // namespace bioforge::geom
