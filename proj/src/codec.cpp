#include "dnastore/codec.hpp"

#include <array>

namespace dna {
namespace {

// Bit cursor over a byte span, most significant bit first.
class BitReader {
public:
    explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}
    bool done() const { return pos_ >= bytes_.size() * 8; }
    std::size_t remaining() const { return bytes_.size() * 8 - pos_; }
    int next() {
        const int bit = (bytes_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1;
        ++pos_;
        return bit;
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

class BitWriter {
public:
    void push(int bit) {
        if ((nbits_ & 7) == 0) bytes_.push_back(0);
        if (bit) bytes_.back() |= static_cast<std::uint8_t>(1u << (7 - (nbits_ & 7)));
        ++nbits_;
    }
    std::vector<std::uint8_t> take_bytes(std::size_t byte_len) {
        bytes_.resize(byte_len);
        return std::move(bytes_);
    }
    std::size_t bit_count() const { return nbits_; }

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t nbits_ = 0;
};

constexpr int kRotationBitsPerBlock = 11;  // 2^11 <= 3^7
constexpr int kRotationTritsPerBlock = 7;

// Grass codons: the 48 triplets with 2nd base != 3rd base, in lexicographic
// order of (b1,b2,b3) with A<C<G<T; the first 47 are digits 0..46.
struct GrassTables {
    std::array<std::array<std::uint8_t, 3>, 47> codon{};
    // (b1*16 + b2*4 + b3) -> digit, or -1 when unused
    std::array<std::int8_t, 64> digit_of{};
    constexpr GrassTables() {
        digit_of.fill(-1);
        int idx = 0;
        for (int b1 = 0; b1 < 4; ++b1)
            for (int b2 = 0; b2 < 4; ++b2)
                for (int b3 = 0; b3 < 4; ++b3) {
                    if (b2 == b3 || idx >= 47) continue;
                    codon[idx] = {static_cast<std::uint8_t>(b1),
                                  static_cast<std::uint8_t>(b2),
                                  static_cast<std::uint8_t>(b3)};
                    digit_of[b1 * 16 + b2 * 4 + b3] = static_cast<std::int8_t>(idx);
                    ++idx;
                }
    }
};

constexpr GrassTables grass_tables{};

}  // namespace

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::Church: return "church";
        case Scheme::Rotation: return "rotation";
        case Scheme::Blawat: return "blawat";
        case Scheme::Grass: return "grass";
        case Scheme::Fountain: return "fountain";
    }
    return "?";
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "church") return Scheme::Church;
    if (name == "rotation") return Scheme::Rotation;
    if (name == "blawat") return Scheme::Blawat;
    if (name == "grass") return Scheme::Grass;
    if (name == "fountain") return Scheme::Fountain;
    throw std::invalid_argument("unknown scheme: " + name);
}

CodecDescriptor descriptor_for(Scheme s) {
    switch (s) {
        case Scheme::Church: return {s, 1.0, 1.0, 3};
        case Scheme::Rotation: return {s, 1.58, 11.0 / 7.0, 1};
        case Scheme::Blawat: return {s, 1.6, 8.0 / 5.0, 3};
        case Scheme::Grass: return {s, 1.78, 16.0 / 9.0, 3};
        case Scheme::Fountain: return {s, 1.81, 2.0 / 1.1, 3};
    }
    throw std::invalid_argument("bad scheme");
}

// --- Church -----------------------------------------------------------------

DnaSeq church_encode(std::span<const std::uint8_t> bytes) {
    DnaSeq out;
    BitReader bits(bytes);
    long gc = 0, at = 0;
    int run_code = -1, run_len = 0;
    while (!bits.done()) {
        const int bit = bits.next();
        // candidates: AT-class and GC-class for this bit value
        const Base at_cand = bit ? Base::T : Base::A;
        const Base gc_cand = bit ? Base::G : Base::C;
        Base pick = (gc < at) ? gc_cand : at_cand;  // tie prefers AT
        if (static_cast<int>(pick) == run_code && run_len >= 3)
            pick = (pick == at_cand) ? gc_cand : at_cand;
        if (static_cast<int>(pick) == run_code) {
            ++run_len;
        } else {
            run_code = static_cast<int>(pick);
            run_len = 1;
        }
        if (is_gc(pick)) ++gc; else ++at;
        out.push_back(pick);
    }
    return out;
}

std::vector<std::uint8_t> church_decode(const DnaSeq& seq) {
    if (seq.size() % 8 != 0)
        throw CodecError("church: sequence length not a multiple of 8");
    BitWriter bits;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const Base b = seq[i];
        bits.push((b == Base::T || b == Base::G) ? 1 : 0);
    }
    return bits.take_bytes(seq.size() / 8);
}

// --- Rotation ---------------------------------------------------------------

std::size_t rotation_encoded_len(std::size_t byte_len) {
    const std::size_t nbits = byte_len * 8;
    const std::size_t blocks = (nbits + kRotationBitsPerBlock - 1) / kRotationBitsPerBlock;
    return blocks * kRotationTritsPerBlock;
}

DnaSeq rotation_encode(std::span<const std::uint8_t> bytes) {
    DnaSeq out;
    BitReader bits(bytes);
    int prev = 0;  // virtual previous base A
    while (!bits.done()) {
        unsigned value = 0;
        for (int i = 0; i < kRotationBitsPerBlock; ++i)
            value = (value << 1) | static_cast<unsigned>(bits.done() ? 0 : bits.next());
        std::array<int, kRotationTritsPerBlock> trits{};
        for (int i = kRotationTritsPerBlock - 1; i >= 0; --i) {
            trits[i] = static_cast<int>(value % 3);
            value /= 3;
        }
        for (int t : trits) {
            prev = (prev + 1 + t) & 3;
            out.push_back(static_cast<Base>(prev));
        }
    }
    return out;
}

std::vector<std::uint8_t> rotation_decode(const DnaSeq& seq, std::size_t byte_len) {
    if (seq.size() != rotation_encoded_len(byte_len))
        throw CodecError("rotation: sequence length does not match byte length");
    BitWriter bits;
    int prev = 0;
    for (std::size_t i = 0; i < seq.size();) {
        unsigned value = 0;
        for (int k = 0; k < kRotationTritsPerBlock; ++k, ++i) {
            const int code = seq.code(i);
            const int trit = (code - prev - 1) & 3;
            if (trit == 3)
                throw CodecError("rotation: consecutive identical bases at base " +
                                 std::to_string(i));
            value = value * 3 + static_cast<unsigned>(trit);
            prev = code;
        }
        if (value >= 2048)
            throw CodecError("rotation: block value out of range");
        for (int k = kRotationBitsPerBlock - 1; k >= 0; --k)
            bits.push((value >> k) & 1);
    }
    return bits.take_bytes(byte_len);  // drops the zero padding bits
}

// --- Blawat -----------------------------------------------------------------

DnaSeq blawat_encode(std::span<const std::uint8_t> bytes) {
    DnaSeq out;
    for (std::uint8_t byte : bytes) {
        const int b1 = (byte >> 6) & 3;
        const int b2 = (byte >> 4) & 3;
        const int b4 = (byte >> 2) & 3;
        const int v = byte & 3;
        int b3 = -1, b5 = -1;
        for (int x = 0; x < 4; ++x) {
            const int y = (v - x + 4) & 3;
            if (b1 == b2 && b2 == x) continue;
            if (y == b4) continue;
            b3 = x;
            b5 = y;
            break;
        }
        out.push_back(static_cast<Base>(b1));
        out.push_back(static_cast<Base>(b2));
        out.push_back(static_cast<Base>(b3));
        out.push_back(static_cast<Base>(b4));
        out.push_back(static_cast<Base>(b5));
    }
    return out;
}

std::vector<std::uint8_t> blawat_decode(const DnaSeq& seq) {
    if (seq.size() % 5 != 0)
        throw CodecError("blawat: sequence length not a multiple of 5");
    std::vector<std::uint8_t> out;
    out.reserve(seq.size() / 5);
    for (std::size_t i = 0; i < seq.size(); i += 5) {
        const int b1 = seq.code(i), b2 = seq.code(i + 1), b3 = seq.code(i + 2);
        const int b4 = seq.code(i + 3), b5 = seq.code(i + 4);
        if (b1 == b2 && b2 == b3)
            throw CodecError("blawat: first three bases identical at base " +
                             std::to_string(i));
        if (b4 == b5)
            throw CodecError("blawat: last two bases identical at base " +
                             std::to_string(i));
        const int v = (b3 + b5) & 3;
        out.push_back(static_cast<std::uint8_t>((b1 << 6) | (b2 << 4) | (b4 << 2) | v));
    }
    return out;
}

// --- Grass ------------------------------------------------------------------

std::size_t grass_encoded_len(std::size_t byte_len) {
    return (byte_len / 2) * 9 + (byte_len % 2 ? 6 : 0);
}

DnaSeq grass_encode(std::span<const std::uint8_t> bytes) {
    DnaSeq out;
    auto push_codon = [&out](int digit) {
        const auto& c = grass_tables.codon[static_cast<std::size_t>(digit)];
        out.push_back(static_cast<Base>(c[0]));
        out.push_back(static_cast<Base>(c[1]));
        out.push_back(static_cast<Base>(c[2]));
    };
    std::size_t i = 0;
    for (; i + 1 < bytes.size(); i += 2) {
        const unsigned value = (static_cast<unsigned>(bytes[i]) << 8) | bytes[i + 1];
        push_codon(static_cast<int>(value / (47 * 47)));
        push_codon(static_cast<int>((value / 47) % 47));
        push_codon(static_cast<int>(value % 47));
    }
    if (i < bytes.size()) {  // trailing odd byte -> two digits
        const unsigned value = bytes[i];
        push_codon(static_cast<int>(value / 47));
        push_codon(static_cast<int>(value % 47));
    }
    return out;
}

std::vector<std::uint8_t> grass_decode(const DnaSeq& seq, std::size_t byte_len) {
    if (seq.size() != grass_encoded_len(byte_len))
        throw CodecError("grass: sequence length does not match byte length");
    auto digit_at = [&seq](std::size_t pos) {
        const int key = seq.code(pos) * 16 + seq.code(pos + 1) * 4 + seq.code(pos + 2);
        const int d = grass_tables.digit_of[static_cast<std::size_t>(key)];
        if (d < 0)
            throw CodecError("grass: invalid codon at base " + std::to_string(pos));
        return static_cast<unsigned>(d);
    };
    std::vector<std::uint8_t> out;
    out.reserve(byte_len);
    std::size_t pos = 0;
    for (std::size_t i = 0; i + 1 < byte_len; i += 2, pos += 9) {
        const unsigned value =
            digit_at(pos) * 47u * 47u + digit_at(pos + 3) * 47u + digit_at(pos + 6);
        if (value > 0xFFFF)
            throw CodecError("grass: digit group out of range at base " +
                             std::to_string(pos));
        out.push_back(static_cast<std::uint8_t>(value >> 8));
        out.push_back(static_cast<std::uint8_t>(value & 0xFF));
    }
    if (byte_len % 2) {
        const unsigned value = digit_at(pos) * 47u + digit_at(pos + 3);
        if (value > 0xFF)
            throw CodecError("grass: trailing digit group out of range");
        out.push_back(static_cast<std::uint8_t>(value));
    }
    return out;
}

// --- direct 2-bit map --------------------------------------------------------

DnaSeq direct_encode(std::span<const std::uint8_t> bytes) {
    DnaSeq out;
    for (std::uint8_t b : bytes)
        for (int k = 6; k >= 0; k -= 2)
            out.push_back(static_cast<Base>((b >> k) & 3));
    return out;
}

std::vector<std::uint8_t> direct_decode(const DnaSeq& seq) {
    if (seq.size() % 4 != 0)
        throw CodecError("direct: sequence length not a multiple of 4");
    std::vector<std::uint8_t> out;
    out.reserve(seq.size() / 4);
    for (std::size_t i = 0; i < seq.size(); i += 4) {
        out.push_back(static_cast<std::uint8_t>(
            (seq.code(i) << 6) | (seq.code(i + 1) << 4) | (seq.code(i + 2) << 2) |
            seq.code(i + 3)));
    }
    return out;
}

}  // namespace dna
