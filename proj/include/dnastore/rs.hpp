#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dna::rs {

// RS(255,239) over GF(2^8), primitive polynomial 0x11D, generator roots
// alpha^0..alpha^15. Shortened systematic codewords for chunks < 239 bytes.

inline constexpr int kParityBytes = 16;
inline constexpr int kMaxData = 239;
inline constexpr int kBlock = 255;
inline constexpr int kMaxCorrectable = 8;

// Systematic codeword: chunk bytes followed by 16 parity bytes.
// Throws std::domain_error unless 1 <= chunk.size() <= 239.
std::vector<std::uint8_t> encode(std::span<const std::uint8_t> chunk);

struct DecodeResult {
    bool ok = false;
    std::vector<std::uint8_t> data;  // corrected chunk (codeword minus parity)
    int corrected = 0;               // number of byte positions repaired
};

// Corrects up to 8 byte errors at unknown positions; ok=false when syndrome
// decoding fails. Throws std::domain_error for words shorter than 17 bytes
// or longer than 255.
DecodeResult decode(std::span<const std::uint8_t> word);

}  // namespace dna::rs
