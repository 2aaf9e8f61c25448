#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dnastore/seq.hpp"

namespace dna {

enum class Scheme { Church, Rotation, Blawat, Grass, Fountain };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);  // throws on unknown name

struct CodecDescriptor {
    Scheme name;
    double nominal_density;        // bits/base used in capacity arithmetic
    double measured_density;       // bits/base measured on whole-block input
    int max_homopolymer_guarantee; // nt
};

// Descriptor with the scheme's nominal figures; measured_density is filled
// from the scheme's exact block arithmetic.
CodecDescriptor descriptor_for(Scheme s);

// Raised by decoders on sequences that no encoder output can produce.
struct CodecError : std::runtime_error {
    explicit CodecError(const std::string& m) : std::runtime_error(m) {}
};

// --- Church: one base per bit, 0 -> {A,C}, 1 -> {T,G}. ---------------------
// The encoder balances GC while never extending a homopolymer run past 3;
// decoding ignores the choice policy entirely.
DnaSeq church_encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> church_decode(const DnaSeq& seq);

// --- Rotation: 11 bits -> 7 trits -> 7 bases, no consecutive repeats. ------
// next_base = (prev + 1 + trit) mod 4 with a virtual initial previous A.
// byte_len tells the decoder where zero padding of the final block starts.
DnaSeq rotation_encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> rotation_decode(const DnaSeq& seq, std::size_t byte_len);
std::size_t rotation_encoded_len(std::size_t byte_len);

// --- Blawat: 8 bits -> 5 bases. --------------------------------------------
// Bit pairs 0&1, 2&3, 4&5 map directly to bases 1, 2 and 4; pair 6&7 = v
// fixes (base3, base5) with code(b3) + code(b5) == v (mod 4), chosen so the
// first three bases are not all equal and base5 != base4.
DnaSeq blawat_encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> blawat_decode(const DnaSeq& seq);

// --- Grass: 2 bytes -> 3 GF(47) digits -> 3 codons (2nd base != 3rd). ------
// A trailing odd byte becomes a 2-digit group; byte_len disambiguates.
DnaSeq grass_encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> grass_decode(const DnaSeq& seq, std::size_t byte_len);
std::size_t grass_encoded_len(std::size_t byte_len);

// Direct 2-bit map used by Fountain droplets ({00,01,10,11} -> {A,C,G,T},
// most significant pair first).
DnaSeq direct_encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> direct_decode(const DnaSeq& seq);

}  // namespace dna
