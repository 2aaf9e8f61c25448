#include "dnastore/collision.hpp"

#include <algorithm>
#include <fstream>

#include <nlohmann/json.hpp>

#include "dnastore/fasta.hpp"

namespace dna {
namespace {

// Error-column blocks between two match columns: da/db primer/payload
// characters consumed by `cols` error columns (cols == error count).
struct Gap {
    int da, db, cols;
};

std::vector<Gap> make_gaps(int max_errors) {
    std::vector<Gap> gaps;
    for (int r = 1; r <= max_errors; ++r)
        for (int x = 0; x <= r; ++x)          // substitutions
            for (int ins = 0; ins + x <= r; ++ins) {
                const int del = r - x - ins;
                const Gap g{x + del, x + ins, r};
                if (std::find_if(gaps.begin(), gaps.end(), [&](const Gap& o) {
                        return o.da == g.da && o.db == g.db && o.cols == g.cols;
                    }) == gaps.end())
                    gaps.push_back(g);
            }
    return gaps;
}

struct OracleWitness {
    int cols = 0;
    int errors = 0;
    int p_begin = 0, p_end = 0;
    int q_begin = 0, q_end = 0;
};

// Max-column match-bounded local alignment with at most max_errors error
// columns, by dynamic programming over match cells. Returns the best
// witness reaching min_len, or the overall best when none does.
std::optional<OracleWitness> oracle_best(const std::vector<std::uint8_t>& p,
                                         const std::vector<std::uint8_t>& q,
                                         int min_len, int max_errors) {
    const int n = static_cast<int>(p.size());
    const int m = static_cast<int>(q.size());
    if (n == 0 || m == 0) return std::nullopt;
    const auto gaps = make_gaps(max_errors);
    const int E = max_errors;
    const int stride = m + 1;
    // cols == 0 encodes "no alignment ends here"
    std::vector<int> cols(static_cast<std::size_t>(E + 1) * stride * (n + 1), 0);
    std::vector<int> start_p(cols.size(), 0), start_q(cols.size(), 0);
    auto at = [stride, n](int e, int i, int j) {
        return (static_cast<std::size_t>(e) * (n + 1) + i) * stride + j;
    };

    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= m; ++j) {
            if (p[i - 1] != q[j - 1]) continue;
            for (int e = 0; e <= E; ++e) {
                int c = 1;  // fresh single-match alignment
                int sp = i - 1, sq = j - 1;
                const std::size_t diag = at(e, i - 1, j - 1);
                if (cols[diag] > 0 && cols[diag] + 1 > c) {
                    c = cols[diag] + 1;
                    sp = start_p[diag];
                    sq = start_q[diag];
                }
                for (const Gap& g : gaps) {
                    if (g.cols > e) continue;
                    const int pi = i - 1 - g.da, qj = j - 1 - g.db;
                    if (pi < 1 || qj < 1) continue;
                    const std::size_t prev = at(e - g.cols, pi, qj);
                    if (cols[prev] == 0) continue;
                    const int cand = cols[prev] + g.cols + 1;
                    if (cand > c) {
                        c = cand;
                        sp = start_p[prev];
                        sq = start_q[prev];
                    }
                }
                const std::size_t cur = at(e, i, j);
                cols[cur] = c;
                start_p[cur] = sp;
                start_q[cur] = sq;
            }
        }
    }
    // Smallest error budget first, so the witness reports minimal errors.
    for (int e = 0; e <= E; ++e)
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= m; ++j) {
                const std::size_t cur = at(e, i, j);
                if (cols[cur] >= min_len)
                    return OracleWitness{cols[cur], e, start_p[cur], i, start_q[cur], j};
            }
    return std::nullopt;
}

std::vector<std::uint8_t> seq_codes(const DnaSeq& s) { return s.codes(); }

}  // namespace

std::optional<CollisionHit> oracle_collides(const DnaSeq& primer,
                                            const DnaSeq& payload,
                                            const CollisionParams& params) {
    if (params.min_align_len <= params.max_errors || params.max_errors < 0)
        throw std::domain_error("collision params: need min_align_len > max_errors >= 0");
    const auto q = seq_codes(payload);
    const int plen = static_cast<int>(primer.size());

    const auto fwd = oracle_best(seq_codes(primer), q, params.min_align_len,
                                 params.max_errors);
    std::optional<OracleWitness> rc;
    if (params.check_reverse_complement)
        rc = oracle_best(seq_codes(reverse_complement(primer)), q,
                         params.min_align_len, params.max_errors);

    const bool use_rc = rc && (!fwd || rc->errors < fwd->errors);
    const OracleWitness* w = use_rc ? &*rc : (fwd ? &*fwd : nullptr);
    if (!w) return std::nullopt;

    CollisionHit hit;
    hit.errors = w->errors;
    hit.revcomp = use_rc;
    if (use_rc) {  // map the span back to forward-primer coordinates
        hit.primer_begin = plen - w->p_end;
        hit.primer_end = plen - w->p_begin;
    } else {
        hit.primer_begin = w->p_begin;
        hit.primer_end = w->p_end;
    }
    hit.payload_begin = w->q_begin;
    hit.payload_end = w->q_end;
    return hit;
}

// --- scanner -----------------------------------------------------------------

namespace {

struct ChainBest {
    int cols = 0;
    int p_chars = 0;
    int q_chars = 0;
};

// Left extension chains: alternating error blocks and nonempty match runs,
// walking left from the exclusive anchor start (a, b).
void chain_left(const std::vector<std::uint8_t>& p, const std::vector<std::uint8_t>& q,
                int a, int b, const std::vector<Gap>& gaps, int max_errors,
                ChainBest best[3]) {
    for (const Gap& g1 : gaps) {
        if (g1.cols > max_errors) continue;
        const int a1 = a - g1.da, b1 = b - g1.db;
        if (a1 < 1 || b1 < 1) continue;
        if (p[a1 - 1] != q[b1 - 1]) continue;
        int m1 = 1;
        while (a1 - 1 - m1 >= 0 && b1 - 1 - m1 >= 0 && p[a1 - 1 - m1] == q[b1 - 1 - m1])
            ++m1;
        const ChainBest c1{g1.cols + m1, g1.da + m1, g1.db + m1};
        if (c1.cols > best[g1.cols].cols) best[g1.cols] = c1;
        const int rem = max_errors - g1.cols;
        if (rem <= 0) continue;
        const int a2b = a1 - m1, b2b = b1 - m1;
        for (const Gap& g2 : gaps) {
            if (g2.cols > rem) continue;
            const int a2 = a2b - g2.da, b2 = b2b - g2.db;
            if (a2 < 1 || b2 < 1) continue;
            if (p[a2 - 1] != q[b2 - 1]) continue;
            int m2 = 1;
            while (a2 - 1 - m2 >= 0 && b2 - 1 - m2 >= 0 && p[a2 - 1 - m2] == q[b2 - 1 - m2])
                ++m2;
            const int e = g1.cols + g2.cols;
            const ChainBest c2{c1.cols + g2.cols + m2, c1.p_chars + g2.da + m2,
                               c1.q_chars + g2.db + m2};
            if (c2.cols > best[e].cols) best[e] = c2;
        }
    }
    for (int e = 1; e <= max_errors; ++e)
        if (best[e - 1].cols > best[e].cols) best[e] = best[e - 1];
}

void chain_right(const std::vector<std::uint8_t>& p, const std::vector<std::uint8_t>& q,
                 int a, int b, const std::vector<Gap>& gaps, int max_errors,
                 ChainBest best[3]) {
    const int P = static_cast<int>(p.size()), M = static_cast<int>(q.size());
    for (const Gap& g1 : gaps) {
        if (g1.cols > max_errors) continue;
        const int a1 = a + g1.da, b1 = b + g1.db;
        if (a1 >= P || b1 >= M) continue;
        if (p[a1] != q[b1]) continue;
        int m1 = 1;
        while (a1 + m1 < P && b1 + m1 < M && p[a1 + m1] == q[b1 + m1]) ++m1;
        const ChainBest c1{g1.cols + m1, g1.da + m1, g1.db + m1};
        if (c1.cols > best[g1.cols].cols) best[g1.cols] = c1;
        const int rem = max_errors - g1.cols;
        if (rem <= 0) continue;
        const int a2b = a1 + m1, b2b = b1 + m1;
        for (const Gap& g2 : gaps) {
            if (g2.cols > rem) continue;
            const int a2 = a2b + g2.da, b2 = b2b + g2.db;
            if (a2 >= P || b2 >= M) continue;
            if (p[a2] != q[b2]) continue;
            int m2 = 1;
            while (a2 + m2 < P && b2 + m2 < M && p[a2 + m2] == q[b2 + m2]) ++m2;
            const int e = g1.cols + g2.cols;
            const ChainBest c2{c1.cols + g2.cols + m2, c1.p_chars + g2.da + m2,
                               c1.q_chars + g2.db + m2};
            if (c2.cols > best[e].cols) best[e] = c2;
        }
    }
    for (int e = 1; e <= max_errors; ++e)
        if (best[e - 1].cols > best[e].cols) best[e] = best[e - 1];
}

}  // namespace

void ScanState::merge(const ScanState& other) {
    if (counts.size() != other.counts.size())
        throw std::invalid_argument("ScanState::merge: size mismatch");
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
    units_scanned += other.units_scanned;
}

CollisionScanner::CollisionScanner(const PrimerLibrary& library,
                                   const CollisionParams& params)
    : params_(params) {
    if (params.min_align_len <= params.max_errors || params.max_errors < 0)
        throw std::domain_error("collision params: need min_align_len > max_errors >= 0");
    // A qualifying alignment has >= min_align_len - max_errors match columns
    // split into at most max_errors + 1 runs, so its longest exact run has
    // ceil((L-E)/(E+1)) == floor(L/(E+1)) bases: seeds of that length miss
    // nothing.
    seed_len_ = std::clamp(params.min_align_len / (params.max_errors + 1), 1, 8);

    primers_.reserve(library.primers.size());
    for (const Primer& p : library.primers) primers_.push_back(p.seq);

    for (const Primer& p : library.primers) {
        strands_.push_back({p.seq.codes(), p.id, false});
        if (params.check_reverse_complement)
            strands_.push_back({reverse_complement(p.seq).codes(), p.id, true});
    }

    const std::size_t ncodes = 1ull << (2 * seed_len_);
    std::vector<std::uint32_t> counts(ncodes + 1, 0);
    auto kmer_code = [this](const std::vector<std::uint8_t>& codes, int pos) {
        std::uint32_t c = 0;
        for (int t = 0; t < seed_len_; ++t) c = (c << 2) | codes[pos + t];
        return c;
    };
    for (const Strand& s : strands_) {
        if (static_cast<int>(s.codes.size()) < seed_len_) continue;
        for (int pos = 0; pos + seed_len_ <= static_cast<int>(s.codes.size()); ++pos)
            ++counts[kmer_code(s.codes, pos) + 1];
    }
    for (std::size_t c = 0; c < ncodes; ++c) counts[c + 1] += counts[c];
    posting_offsets_ = counts;
    postings_.resize(posting_offsets_[ncodes]);
    std::vector<std::uint32_t> fill(posting_offsets_.begin(), posting_offsets_.end() - 1);
    for (std::uint32_t si = 0; si < strands_.size(); ++si) {
        const Strand& s = strands_[si];
        if (static_cast<int>(s.codes.size()) < seed_len_) continue;
        for (int pos = 0; pos + seed_len_ <= static_cast<int>(s.codes.size()); ++pos) {
            const std::uint32_t c = kmer_code(s.codes, pos);
            postings_[fill[c]++] = {si, static_cast<std::uint8_t>(pos)};
        }
    }
}

bool CollisionScanner::strand_hits_unit(const Strand& strand, int pos, int j,
                                        const std::vector<std::uint8_t>& unit) const {
    const auto& p = strand.codes;
    const int P = static_cast<int>(p.size());
    const int M = static_cast<int>(unit.size());
    const int L = params_.min_align_len;
    const int E = params_.max_errors;

    int r0 = 0;
    while (pos + seed_len_ + r0 < P && j + seed_len_ + r0 < M &&
           p[pos + seed_len_ + r0] == unit[j + seed_len_ + r0])
        ++r0;
    const int s = seed_len_ + r0;
    if (s >= L) return true;

    static const std::vector<Gap> gaps = make_gaps(2);
    ChainBest bl[3], br[3];
    chain_left(p, unit, pos, j, gaps, E, bl);
    chain_right(p, unit, pos + s, j + s, gaps, E, br);
    for (int el = 0; el <= E; ++el)
        for (int er = 0; el + er <= E; ++er)
            if (bl[el].cols + s + br[er].cols >= L) return true;
    return false;
}

std::vector<int> CollisionScanner::unit_hits(const DnaSeq& unit) const {
    std::vector<int> hits;
    const auto& u = unit.codes();
    const int M = static_cast<int>(u.size());
    if (M < seed_len_) return hits;

    if (params_.max_errors > 2) {  // chain search is only tuned for <= 2
        for (std::size_t id = 0; id < primers_.size(); ++id)
            if (oracle_collides(primers_[id], unit, params_))
                hits.push_back(static_cast<int>(id));
        return hits;
    }

    thread_local std::vector<std::uint8_t> counted;
    counted.assign(primers_.size(), 0);

    const std::uint32_t mask = (1u << (2 * seed_len_)) - 1;
    std::uint32_t code = 0;
    for (int t = 0; t < seed_len_ - 1; ++t) code = (code << 2) | u[t];
    for (int j = 0; j + seed_len_ <= M; ++j) {
        code = ((code << 2) | u[j + seed_len_ - 1]) & mask;
        const std::uint32_t b = posting_offsets_[code];
        const std::uint32_t e = posting_offsets_[code + 1];
        for (std::uint32_t t = b; t < e; ++t) {
            const Posting& post = postings_[t];
            const Strand& strand = strands_[post.strand_index];
            if (counted[strand.primer_id]) continue;
            const int pos = post.pos;
            // only the leftmost seed of each maximal run extends
            if (pos > 0 && j > 0 && strand.codes[pos - 1] == u[j - 1]) continue;
            if (strand_hits_unit(strand, pos, j, u)) {
                counted[strand.primer_id] = 1;
                hits.push_back(strand.primer_id);
            }
        }
    }
    std::sort(hits.begin(), hits.end());
    return hits;
}

void CollisionScanner::scan_unit(const DnaSeq& unit, ScanState& state) const {
    for (int id : unit_hits(unit)) ++state.counts[static_cast<std::size_t>(id)];
    ++state.units_scanned;
}

ScanState CollisionScanner::new_state() const {
    ScanState s;
    s.counts.assign(primers_.size(), 0);
    return s;
}

std::optional<CollisionHit> collides(const DnaSeq& primer, const DnaSeq& payload,
                                     const CollisionParams& params) {
    PrimerLibrary lib;
    lib.rules.primer_length = static_cast<int>(primer.size());
    lib.primers.push_back({0, primer});
    const CollisionScanner scanner(lib, params);
    if (scanner.unit_hits(payload).empty()) return std::nullopt;
    // Boolean outcome is the scanner's; the witness detail comes from the
    // exhaustive search (spans are not part of the boolean contract).
    return oracle_collides(primer, payload, params);
}

// --- internal indexes ---------------------------------------------------------

DnaSeq IndexTable::seq_at(std::size_t ordinal) const {
    const std::uint32_t code = codes.at(ordinal);
    DnaSeq s;
    for (int t = length - 1; t >= 0; --t)
        s.push_back(static_cast<Base>((code >> (2 * t)) & 3));
    return s;
}

std::optional<std::size_t> IndexTable::ordinal_of(const DnaSeq& seq) const {
    if (static_cast<int>(seq.size()) != length) return std::nullopt;
    std::uint32_t code = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) code = (code << 2) | seq.code(i);
    const auto it = std::lower_bound(codes.begin(), codes.end(), code);
    if (it == codes.end() || *it != code) return std::nullopt;
    return static_cast<std::size_t>(it - codes.begin());
}

IndexTable gen_internal_indexes(const PrimerLibrary& library, std::size_t count,
                                int length, const CollisionParams& params) {
    if (length < 1 || length > 16)
        throw std::domain_error("gen_internal_indexes: length must be in [1, 16]");
    IndexTable table;
    table.length = length;
    table.codes.reserve(count);
    const CollisionScanner scanner(library, params);
    const std::uint64_t total = 1ull << (2 * length);
    for (std::uint64_t code = 0; code < total && table.codes.size() < count; ++code) {
        DnaSeq s;
        for (int t = length - 1; t >= 0; --t)
            s.push_back(static_cast<Base>((code >> (2 * t)) & 3));
        if (scanner.unit_hits(s).empty())
            table.codes.push_back(static_cast<std::uint32_t>(code));
    }
    if (table.codes.size() < count)
        throw IndexGenError("index alphabet exhausted at " +
                                std::to_string(table.codes.size()) + " of " +
                                std::to_string(count),
                            table.codes.size());
    return table;
}

void save_index_table(const IndexTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    std::vector<FastaRecord> recs;
    recs.reserve(table.size());
    for (std::size_t i = 0; i < table.size(); ++i)
        recs.push_back({"index_" + std::to_string(i), table.seq_at(i)});
    write_fasta(out, recs);
}

IndexTable load_index_table(const std::string& path) {
    const auto recs = read_fasta_file(path);
    IndexTable table;
    if (recs.empty()) throw std::runtime_error("empty index table: " + path);
    table.length = static_cast<int>(recs[0].seq.size());
    table.codes.reserve(recs.size());
    for (const auto& r : recs) {
        if (static_cast<int>(r.seq.size()) != table.length)
            throw std::runtime_error("index table: ragged lengths in " + path);
        std::uint32_t code = 0;
        for (std::size_t i = 0; i < r.seq.size(); ++i)
            code = (code << 2) | r.seq.code(i);
        table.codes.push_back(code);
    }
    if (!std::is_sorted(table.codes.begin(), table.codes.end()))
        throw std::runtime_error("index table: not lexicographically sorted");
    return table;
}

// --- reports ------------------------------------------------------------------

CollisionHistogram collision_histogram(const ScanState& state) {
    CollisionHistogram h;
    std::uint64_t max_count = 0, sum = 0;
    for (std::uint64_t c : state.counts) {
        if (c == 0)
            ++h.usable;
        else {
            ++h.collided;
            sum += c;
            max_count = std::max(max_count, c);
        }
    }
    const std::uint64_t total = h.usable + h.collided;
    h.collided_fraction = total ? static_cast<double>(h.collided) / total : 0.0;
    h.mean_collisions_per_collided =
        h.collided ? static_cast<double>(sum) / static_cast<double>(h.collided) : 0.0;

    h.buckets.push_back({0, 0, h.usable});
    std::uint64_t lo = 1, hi = 10;
    while (lo <= max_count) {
        HistogramBucket b{lo, hi, 0};
        for (std::uint64_t c : state.counts)
            if (c >= lo && c <= hi) ++b.primer_count;
        h.buckets.push_back(b);
        lo = hi + 1;
        hi *= 10;
    }
    return h;
}

void write_scan_csv(const ScanState& state, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "primer_id,collision_count\n";
    for (std::size_t i = 0; i < state.counts.size(); ++i)
        out << i << ',' << state.counts[i] << '\n';
}

void write_scan_summary_json(const ScanState& state, const std::string& path) {
    const CollisionHistogram h = collision_histogram(state);
    nlohmann::json j;
    j["payload_units_scanned"] = state.units_scanned;
    j["primer_count"] = state.counts.size();
    j["usable_primer_count"] = h.usable;
    j["collided_primer_count"] = h.collided;
    j["collided_fraction"] = h.collided_fraction;
    j["mean_collisions_per_collided_primer"] = h.mean_collisions_per_collided;
    nlohmann::json buckets = nlohmann::json::array();
    for (const auto& b : h.buckets)
        buckets.push_back({{"collisions_lo", b.lo},
                           {"collisions_hi", b.hi},
                           {"primer_count", b.primer_count}});
    j["histogram_buckets"] = buckets;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << j.dump(2) << '\n';
}

}  // namespace dna
