#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dna {

// Canonical base order A < C < G < T; codes 0..3.
enum class Base : std::uint8_t { A = 0, C = 1, G = 2, T = 3 };

constexpr char base_to_char(Base b) {
    constexpr char tbl[4] = {'A', 'C', 'G', 'T'};
    return tbl[static_cast<int>(b)];
}

constexpr Base complement(Base b) {
    // A<->T, C<->G, i.e. code xor 3
    return static_cast<Base>(static_cast<std::uint8_t>(b) ^ 3u);
}

constexpr bool is_gc(Base b) { return b == Base::C || b == Base::G; }

// Returns -1 for characters outside {A,C,G,T}.
constexpr int char_to_base_code(char c) {
    switch (c) {
        case 'A': return 0;
        case 'C': return 1;
        case 'G': return 2;
        case 'T': return 3;
        default: return -1;
    }
}

/// Immutable-friendly DNA sequence over {A,C,G,T}, stored as one code byte
/// per base.
class DnaSeq {
public:
    DnaSeq() = default;
    explicit DnaSeq(std::vector<std::uint8_t> codes) : codes_(std::move(codes)) {
        for (std::uint8_t c : codes_)
            if (c > 3) throw std::invalid_argument("DnaSeq: code out of range");
    }

    // Throws std::invalid_argument naming the first bad position.
    static DnaSeq from_string(std::string_view s);

    std::string to_string() const;

    std::size_t size() const { return codes_.size(); }
    bool empty() const { return codes_.empty(); }

    Base operator[](std::size_t i) const { return static_cast<Base>(codes_[i]); }
    std::uint8_t code(std::size_t i) const { return codes_[i]; }

    void push_back(Base b) { codes_.push_back(static_cast<std::uint8_t>(b)); }
    void append(const DnaSeq& other) {
        codes_.insert(codes_.end(), other.codes_.begin(), other.codes_.end());
    }

    DnaSeq subseq(std::size_t pos, std::size_t len) const {
        if (pos > codes_.size() || pos + len > codes_.size())
            throw std::out_of_range("DnaSeq::subseq");
        return DnaSeq(std::vector<std::uint8_t>(codes_.begin() + pos,
                                                codes_.begin() + pos + len));
    }

    const std::vector<std::uint8_t>& codes() const { return codes_; }

    bool operator==(const DnaSeq& o) const = default;

private:
    std::vector<std::uint8_t> codes_;
};

struct SeqMetrics {
    double gc_fraction = 0.0;
    int max_homopolymer = 0;
    double melting_temp = 0.0;
};

// (#G + #C) / length. Throws std::domain_error on empty input.
double gc_content(const DnaSeq& seq);

// Longest run of identical consecutive bases; 0 for empty input.
int max_homopolymer(const DnaSeq& seq);

DnaSeq reverse_complement(const DnaSeq& seq);

// Number of differing positions. Throws std::invalid_argument on unequal
// lengths.
int hamming(const DnaSeq& a, const DnaSeq& b);

// Wallace rule: 2*(#A+#T) + 4*(#G+#C) degrees C. Throws std::domain_error on
// empty input.
double melting_temp_wallace(const DnaSeq& seq);

using TmModel = double (*)(const DnaSeq&);

SeqMetrics seq_metrics(const DnaSeq& seq, TmModel tm = melting_temp_wallace);

// Maximum L such that a length-L substring of a equals the reverse
// complement of a length-L substring of b; 0 if none.
int longest_inter_complement(const DnaSeq& a, const DnaSeq& b);

// Maximum L with two substrings of a on disjoint index intervals that are
// reverse complements of each other (hairpin stem); 0 if none.
int longest_intra_complement(const DnaSeq& a);

}  // namespace dna
