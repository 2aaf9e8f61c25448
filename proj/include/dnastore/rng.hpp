#pragma once

#include <cstdint>

#include "dnastore/seq.hpp"

namespace dna {

/// xorshift64* generator, pinned for cross-implementation reproducibility.
/// Recurrence: x ^= x >> 12; x ^= x << 25; x ^= x >> 27; output x * M
/// with M = 0x2545F4914F6CDD1D. A zero seed is remapped to a fixed nonzero
/// constant (the state must never be zero).
class Xorshift64Star {
public:
    explicit Xorshift64Star(std::uint64_t seed)
        : state_(seed ? seed : 0x9E3779B97F4A7C15ull) {}

    std::uint64_t next() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545F4914F6CDD1Dull;
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    std::uint32_t next_u32() { return static_cast<std::uint32_t>(next() >> 32); }

    // Top two output bits; one draw per base.
    Base next_base() { return static_cast<Base>(next() >> 62); }

    // Modulo reduction; bias is negligible for n << 2^64 and the pinned
    // stream is what matters.
    std::uint64_t next_below(std::uint64_t n) { return next() % n; }

private:
    std::uint64_t state_;
};

inline DnaSeq random_seq(Xorshift64Star& rng, std::size_t len) {
    DnaSeq s;
    for (std::size_t i = 0; i < len; ++i) s.push_back(rng.next_base());
    return s;
}

}  // namespace dna
