#include "dnastore/seq.hpp"

#include <algorithm>

namespace dna {

DnaSeq DnaSeq::from_string(std::string_view s) {
    std::vector<std::uint8_t> codes;
    codes.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        int c = char_to_base_code(s[i]);
        if (c < 0)
            throw std::invalid_argument("invalid base '" + std::string(1, s[i]) +
                                        "' at position " + std::to_string(i));
        codes.push_back(static_cast<std::uint8_t>(c));
    }
    return DnaSeq(std::move(codes));
}

std::string DnaSeq::to_string() const {
    std::string out;
    out.reserve(codes_.size());
    for (std::uint8_t c : codes_) out.push_back(base_to_char(static_cast<Base>(c)));
    return out;
}

double gc_content(const DnaSeq& seq) {
    if (seq.empty()) throw std::domain_error("gc_content: empty sequence");
    std::size_t gc = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
        if (is_gc(seq[i])) ++gc;
    return static_cast<double>(gc) / static_cast<double>(seq.size());
}

int max_homopolymer(const DnaSeq& seq) {
    if (seq.empty()) return 0;
    int best = 1, run = 1;
    for (std::size_t i = 1; i < seq.size(); ++i) {
        run = (seq[i] == seq[i - 1]) ? run + 1 : 1;
        best = std::max(best, run);
    }
    return best;
}

DnaSeq reverse_complement(const DnaSeq& seq) {
    std::vector<std::uint8_t> out(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i)
        out[seq.size() - 1 - i] = seq.code(i) ^ 3u;
    return DnaSeq(std::move(out));
}

int hamming(const DnaSeq& a, const DnaSeq& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("hamming: length mismatch");
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) ++d;
    return d;
}

double melting_temp_wallace(const DnaSeq& seq) {
    if (seq.empty()) throw std::domain_error("melting_temp: empty sequence");
    std::size_t gc = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
        if (is_gc(seq[i])) ++gc;
    std::size_t at = seq.size() - gc;
    return 2.0 * static_cast<double>(at) + 4.0 * static_cast<double>(gc);
}

SeqMetrics seq_metrics(const DnaSeq& seq, TmModel tm) {
    return SeqMetrics{gc_content(seq), max_homopolymer(seq), tm(seq)};
}

int longest_inter_complement(const DnaSeq& a, const DnaSeq& b) {
    if (a.empty() || b.empty()) return 0;
    const DnaSeq rb = reverse_complement(b);
    const std::size_t n = a.size(), m = rb.size();
    // longest common substring via suffix-match lengths, rolling row
    std::vector<int> prev(m + 1, 0), cur(m + 1, 0);
    int best = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            cur[j] = (a[i - 1] == rb[j - 1]) ? prev[j - 1] + 1 : 0;
            best = std::max(best, cur[j]);
        }
        std::swap(prev, cur);
    }
    return best;
}

int longest_intra_complement(const DnaSeq& a) {
    const std::size_t n = a.size();
    if (n < 2) return 0;
    const DnaSeq r = reverse_complement(a);
    // Common substring a[i-L+1..i] == r[j-L+1..j] corresponds to the second
    // interval [n-1-j, n-j-2+L] in a. The two intervals must not overlap.
    std::vector<int> prev(n + 1, 0), cur(n + 1, 0);
    int best = 0;
    for (std::size_t ii = 1; ii <= n; ++ii) {
        const int i = static_cast<int>(ii) - 1;  // inclusive end in a
        for (std::size_t jj = 1; jj <= n; ++jj) {
            const int j = static_cast<int>(jj) - 1;  // inclusive end in r
            int m = (a[ii - 1] == r[jj - 1]) ? prev[jj - 1] + 1 : 0;
            cur[jj] = m;
            if (m == 0) continue;
            const int s2_start = static_cast<int>(n) - 1 - j;
            if (i < s2_start) {
                // s1 ends before s2 starts for every L <= m
                best = std::max(best, m);
            } else {
                // need s2 end < s1 start: n-j-2+L < i-L+1
                // => L <= floor((i + j + 2 - n) / 2)
                int cap = (i + j + 2 - static_cast<int>(n)) / 2;
                best = std::max(best, std::min(m, cap));
            }
        }
        std::swap(prev, cur);
    }
    return best;
}

}  // namespace dna
