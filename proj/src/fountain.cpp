#include "dnastore/fountain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dna {

DnaSeq Droplet::to_dna() const {
    DnaSeq out;
    for (int k = 30; k >= 0; k -= 2)
        out.push_back(static_cast<Base>((seed >> k) & 3));
    out.append(direct_encode(payload));
    return out;
}

Droplet Droplet::from_dna(const DnaSeq& seq) {
    if (seq.size() < 16 || (seq.size() - 16) % 4 != 0)
        throw CodecError("droplet: bad sequence length");
    Droplet d;
    for (std::size_t i = 0; i < 16; ++i)
        d.seed = (d.seed << 2) | seq.code(i);
    d.payload = direct_decode(seq.subseq(16, seq.size() - 16));
    return d;
}

DegreeTable::DegreeTable(std::size_t n, double c, double delta) {
    if (n == 0) throw std::domain_error("DegreeTable: n must be positive");
    const double dn = static_cast<double>(n);
    const double r = c * std::log(dn / delta) * std::sqrt(dn);
    std::size_t spike = static_cast<std::size_t>(std::llround(dn / r));
    spike = std::clamp<std::size_t>(spike, 1, n);
    std::vector<double> w(n + 1, 0.0);
    w[1] = 1.0 / dn;
    for (std::size_t i = 2; i <= n; ++i)
        w[i] = 1.0 / (static_cast<double>(i) * static_cast<double>(i - 1));
    for (std::size_t i = 1; i < spike; ++i) w[i] += r / (static_cast<double>(i) * dn);
    w[spike] += r * std::log(r / delta) / dn;
    cumulative_.resize(n);
    double acc = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        acc += w[i];
        cumulative_[i - 1] = acc;
    }
    for (double& x : cumulative_) x /= acc;
    cumulative_.back() = 1.0;
}

std::size_t DegreeTable::sample(double u) const {
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return static_cast<std::size_t>(it - cumulative_.begin()) + 1;
}

std::vector<std::uint32_t> droplet_segments(std::uint32_t seed,
                                            const DegreeTable& table) {
    Xorshift64Star rng(seed);
    const std::size_t degree = table.sample(rng.next_unit());
    const std::size_t n = table.n();
    std::vector<std::uint32_t> sel;
    sel.reserve(degree);
    while (sel.size() < degree) {
        const auto idx = static_cast<std::uint32_t>(rng.next_below(n));
        if (std::find(sel.begin(), sel.end(), idx) == sel.end()) sel.push_back(idx);
    }
    return sel;
}

namespace {

bool droplet_passes_screen(const DnaSeq& seq, const FountainParams& p) {
    std::size_t gc = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
        if (is_gc(seq[i])) ++gc;
    // inclusive bounds, exact rational comparison
    if (100 * gc < static_cast<std::size_t>(p.gc_min * 100 + 0.5) * seq.size())
        return false;
    if (100 * gc > static_cast<std::size_t>(p.gc_max * 100 + 0.5) * seq.size())
        return false;
    return max_homopolymer(seq) <= p.max_homopolymer;
}

}  // namespace

std::vector<Droplet> fountain_encode(
    const std::vector<std::vector<std::uint8_t>>& segments,
    const FountainParams& params, std::uint64_t master_seed) {
    if (segments.empty())
        throw std::domain_error("fountain_encode: no segments");
    const std::size_t seg_size = segments[0].size();
    for (const auto& s : segments)
        if (s.size() != seg_size)
            throw std::domain_error("fountain_encode: segment size mismatch");

    const std::size_t n = segments.size();
    const DegreeTable table(n, params.soliton_c, params.soliton_delta);
    const auto target = static_cast<std::size_t>(
        std::ceil((1.0 + params.redundancy) * static_cast<double>(n)));

    Xorshift64Star master(master_seed);
    std::vector<Droplet> out;
    out.reserve(target);
    const std::size_t attempt_cap = 10000 * target + 10000;
    std::size_t attempts = 0;
    while (out.size() < target) {
        if (++attempts > attempt_cap)
            throw std::runtime_error("fountain_encode: screening rejected too many droplets");
        const std::uint32_t seed = master.next_u32();
        if (seed == 0) continue;
        Droplet d;
        d.seed = seed;
        d.payload.assign(seg_size, 0);
        for (std::uint32_t idx : droplet_segments(seed, table))
            for (std::size_t k = 0; k < seg_size; ++k)
                d.payload[k] = static_cast<std::uint8_t>(d.payload[k] ^ segments[idx][k]);
        if (droplet_passes_screen(d.to_dna(), params)) out.push_back(std::move(d));
    }
    return out;
}

FountainDecodeResult fountain_decode(const std::vector<Droplet>& droplets,
                                     std::size_t n_segments,
                                     const FountainParams& params) {
    FountainDecodeResult res;
    if (n_segments == 0) {
        res.ok = true;
        return res;
    }
    std::size_t seg_size = 0;
    for (const auto& d : droplets) {
        if (seg_size == 0) seg_size = d.payload.size();
        if (d.payload.size() != seg_size)
            throw std::domain_error("fountain_decode: droplet payload size mismatch");
    }

    const DegreeTable table(n_segments, params.soliton_c, params.soliton_delta);

    struct Row {
        std::vector<std::uint32_t> idx;  // unsolved segment indices
        std::vector<std::uint8_t> val;
    };
    std::vector<Row> rows;
    rows.reserve(droplets.size());
    for (const auto& d : droplets) {
        Row r;
        r.idx = droplet_segments(d.seed, table);
        std::sort(r.idx.begin(), r.idx.end());
        r.val = d.payload;
        rows.push_back(std::move(r));
    }

    std::vector<std::vector<std::uint8_t>> solved(n_segments);
    std::vector<bool> have(n_segments, false);
    std::vector<std::vector<std::uint32_t>> by_segment(n_segments);
    for (std::uint32_t ri = 0; ri < rows.size(); ++ri)
        for (std::uint32_t s : rows[ri].idx) by_segment[s].push_back(ri);

    auto xor_into = [seg_size](std::vector<std::uint8_t>& dst,
                               const std::vector<std::uint8_t>& src) {
        for (std::size_t k = 0; k < seg_size; ++k)
            dst[k] = static_cast<std::uint8_t>(dst[k] ^ src[k]);
    };

    // Peeling: repeatedly resolve degree-1 rows and substitute.
    std::vector<std::uint32_t> queue;
    for (std::uint32_t ri = 0; ri < rows.size(); ++ri)
        if (rows[ri].idx.size() == 1) queue.push_back(ri);
    std::size_t n_solved = 0;
    while (!queue.empty()) {
        const std::uint32_t ri = queue.back();
        queue.pop_back();
        if (rows[ri].idx.size() != 1) continue;
        const std::uint32_t seg = rows[ri].idx[0];
        if (have[seg]) {
            rows[ri].idx.clear();
            continue;
        }
        solved[seg] = rows[ri].val;
        have[seg] = true;
        ++n_solved;
        for (std::uint32_t rj : by_segment[seg]) {
            auto& row = rows[rj];
            auto it = std::find(row.idx.begin(), row.idx.end(), seg);
            if (it == row.idx.end()) continue;
            row.idx.erase(it);
            xor_into(row.val, solved[seg]);
            if (row.idx.size() == 1) queue.push_back(rj);
        }
    }

    if (n_solved < n_segments) {
        // Inactivation step: Gaussian elimination over the residual system.
        std::vector<std::uint32_t> unknown;
        std::vector<std::int32_t> col_of(n_segments, -1);
        for (std::uint32_t s = 0; s < n_segments; ++s)
            if (!have[s]) {
                col_of[s] = static_cast<std::int32_t>(unknown.size());
                unknown.push_back(s);
            }
        const std::size_t ncols = unknown.size();
        const std::size_t words = (ncols + 63) / 64;
        struct GRow {
            std::vector<std::uint64_t> bits;
            std::vector<std::uint8_t> val;
        };
        std::vector<GRow> sys;
        for (const auto& row : rows) {
            if (row.idx.empty()) continue;
            GRow g;
            g.bits.assign(words, 0);
            for (std::uint32_t s : row.idx) {
                const auto c = static_cast<std::size_t>(col_of[s]);
                g.bits[c >> 6] |= 1ull << (c & 63);
            }
            g.val = row.val;
            sys.push_back(std::move(g));
        }
        auto row_xor = [&](GRow& a, const GRow& b) {
            for (std::size_t w = 0; w < words; ++w) a.bits[w] ^= b.bits[w];
            xor_into(a.val, b.val);
        };
        std::size_t rank = 0;
        std::vector<std::size_t> pivot_row(ncols, SIZE_MAX);
        for (std::size_t col = 0; col < ncols && rank < sys.size(); ++col) {
            std::size_t piv = SIZE_MAX;
            for (std::size_t r = rank; r < sys.size(); ++r)
                if (sys[r].bits[col >> 6] >> (col & 63) & 1) {
                    piv = r;
                    break;
                }
            if (piv == SIZE_MAX) continue;
            std::swap(sys[rank], sys[piv]);
            for (std::size_t r = 0; r < sys.size(); ++r)
                if (r != rank && (sys[r].bits[col >> 6] >> (col & 63) & 1))
                    row_xor(sys[r], sys[rank]);
            pivot_row[col] = rank;
            ++rank;
        }
        for (std::size_t col = 0; col < ncols; ++col) {
            if (pivot_row[col] == SIZE_MAX) continue;
            const GRow& g = sys[pivot_row[col]];
            bool single = true;
            for (std::size_t w = 0; w < words; ++w) {
                std::uint64_t expect = (w == (col >> 6)) ? (1ull << (col & 63)) : 0;
                if (g.bits[w] != expect) {
                    single = false;
                    break;
                }
            }
            if (!single) continue;  // pivot row still touches a free column
            const std::uint32_t seg = unknown[col];
            solved[seg] = g.val;
            have[seg] = true;
            ++n_solved;
        }
    }

    if (n_solved == n_segments) {
        res.ok = true;
        res.segments = std::move(solved);
    } else {
        for (std::uint32_t s = 0; s < n_segments; ++s)
            if (!have[s]) res.unresolved.push_back(s);
    }
    return res;
}

}  // namespace dna
