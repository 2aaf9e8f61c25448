#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dnastore/primer.hpp"
#include "dnastore/seq.hpp"

namespace dna {

struct CollisionParams {
    int min_align_len = 12;  // alignment columns, inclusive
    int max_errors = 2;      // substitutions + insertions + deletions
    bool check_reverse_complement = true;
};

struct CollisionHit {
    int primer_id = -1;
    std::int64_t payload_id = -1;
    int primer_begin = 0, primer_end = 0;    // [begin, end) on the primer
    int payload_begin = 0, payload_end = 0;  // [begin, end) on the payload
    int errors = 0;
    bool revcomp = false;
};

// Exhaustive ground truth: a hit exists iff some local alignment between the
// primer (or its reverse complement) and the payload spans at least
// min_align_len columns with at most max_errors error columns. Local
// alignments begin and end with match columns. Desk-scale cost only.
std::optional<CollisionHit> oracle_collides(const DnaSeq& primer,
                                            const DnaSeq& payload,
                                            const CollisionParams& params);

// Production scanner for one pair; boolean outcome always agrees with
// oracle_collides (witness spans may differ).
std::optional<CollisionHit> collides(const DnaSeq& primer, const DnaSeq& payload,
                                     const CollisionParams& params);

struct ScanState {
    std::vector<std::uint64_t> counts;  // collided payload units per primer
    std::uint64_t units_scanned = 0;

    void merge(const ScanState& other);
};

// Seed-and-extend scanner over a frozen primer library: exact k-mer seeds
// (k from the pigeonhole bound), run-deduplicated, extended with bounded-
// error chains. Falls back to the oracle when max_errors > 2.
class CollisionScanner {
public:
    CollisionScanner(const PrimerLibrary& library, const CollisionParams& params);

    std::size_t primer_count() const { return primers_.size(); }
    const CollisionParams& params() const { return params_; }

    // Colliding primer ids for one payload unit, ascending, deduplicated.
    std::vector<int> unit_hits(const DnaSeq& unit) const;

    void scan_unit(const DnaSeq& unit, ScanState& state) const;

    ScanState new_state() const;

private:
    struct Posting {
        std::uint32_t strand_index;  // into strands_
        std::uint8_t pos;
    };
    struct Strand {
        std::vector<std::uint8_t> codes;
        int primer_id;
        bool revcomp;
    };

    bool strand_hits_unit(const Strand& strand, int pos, int j,
                          const std::vector<std::uint8_t>& unit) const;

    CollisionParams params_;
    int seed_len_;
    std::vector<Strand> strands_;
    std::vector<DnaSeq> primers_;
    std::vector<std::uint32_t> posting_offsets_;  // size 4^k + 1
    std::vector<Posting> postings_;
};

// 12-mers that never collide with any library primer, in lexicographic
// order (A<C<G<T per position).
struct IndexTable {
    int length = 12;
    std::vector<std::uint32_t> codes;  // packed 2 bits/base, MSB-first

    DnaSeq seq_at(std::size_t ordinal) const;
    std::optional<std::size_t> ordinal_of(const DnaSeq& seq) const;
    std::size_t size() const { return codes.size(); }
};

struct IndexGenError : std::runtime_error {
    IndexGenError(const std::string& m, std::size_t achieved)
        : std::runtime_error(m), achieved_count(achieved) {}
    std::size_t achieved_count;
};

// Enumerates length-`length` sequences lexicographically, keeping those with
// no collision against any primer, until `count` are found. Throws
// IndexGenError when the alphabet is exhausted first.
IndexTable gen_internal_indexes(const PrimerLibrary& library, std::size_t count,
                                int length, const CollisionParams& params);

void save_index_table(const IndexTable& table, const std::string& path);
IndexTable load_index_table(const std::string& path);

struct HistogramBucket {
    std::uint64_t lo = 0, hi = 0;  // inclusive collision-count range
    std::uint64_t primer_count = 0;
};

struct CollisionHistogram {
    std::vector<HistogramBucket> buckets;
    std::uint64_t usable = 0;    // primers with zero collisions
    std::uint64_t collided = 0;
    double collided_fraction = 0.0;
    double mean_collisions_per_collided = 0.0;
};

CollisionHistogram collision_histogram(const ScanState& state);

// primer_id,collision_count rows.
void write_scan_csv(const ScanState& state, const std::string& path);
// usable/collided counts, mean, and histogram buckets with units in names.
void write_scan_summary_json(const ScanState& state, const std::string& path);

}  // namespace dna
