#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dnastore/codec.hpp"
#include "dnastore/collision.hpp"
#include "dnastore/fountain.hpp"
#include "dnastore/primer.hpp"

namespace dna {

struct TubeParams {
    std::int64_t parallel_factor = 1'550'000;  // strands per primer pair
    int payload_len_nt = 198;
    int index_len_nt = 12;
    int primer_len_nt = 20;
    int ecc_data_bytes = 239;  // RS(255,239) payload fraction
    int ecc_code_bytes = 255;
    std::int64_t partition_data_size = 10ll * 1024 * 1024;

    int strand_len_nt() const { return 2 * primer_len_nt + index_len_nt + payload_len_nt; }
    double ecc_fraction() const {
        return static_cast<double>(ecc_data_bytes) / ecc_code_bytes;
    }
    void validate() const;  // strand length must stay within 300 nt
};

// Primers required for data_bytes of raw data at the given encoding density:
// strands = ceil(data * 8 / ecc_fraction / density / payload_len), one pair
// of two primers per parallel_factor strands. Exact integer arithmetic for
// densities with at most six decimals.
std::int64_t primers_needed(std::int64_t data_bytes, double density,
                            const TubeParams& params);

// Raw-data bytes one tube holds with primer_count primers and no collisions:
// floor(primer_count/2) * parallel_factor * payload_len * density / 8 *
// ecc_fraction.
double theoretical_capacity_bytes(std::int64_t primer_count, double density,
                                  const TubeParams& params);
double bytes_to_gib(double bytes);

struct PrimerPair {
    int fwd_id = 0;
    int rev_id = 0;
};

struct Strand {
    int fwd_primer_id = 0;
    std::int64_t index_ordinal = 0;
    DnaSeq payload;
    int rev_primer_id = 0;
};

// Payloads receive consecutive index ordinals under one primer pair.
// Throws std::domain_error when payloads exceed the parallel factor.
std::vector<Strand> assemble_strands(const std::vector<DnaSeq>& payloads,
                                     const IndexTable& index_table,
                                     PrimerPair pair, const TubeParams& params);

// Forward primer, index, payload, reverse-complemented reverse primer.
DnaSeq strand_sequence(const Strand& strand, const PrimerLibrary& library,
                       const IndexTable& index_table);

// Exact inverse of strand_sequence; throws std::runtime_error when primer or
// index regions match nothing in the library/table.
Strand disassemble_strand(const DnaSeq& full, const PrimerLibrary& library,
                          const IndexTable& index_table, const TubeParams& params);

struct PartitionRecord {
    std::int64_t partition = 0;         // 1-based
    std::int64_t cumulative_bytes = 0;  // raw data bytes
    std::int64_t usable_primers = 0;
    std::int64_t needed_primers = 0;
    std::int64_t cumulative_strands = 0;  // actual encoded payload units
};

struct CapacityReport {
    Scheme scheme = Scheme::Rotation;
    double nominal_density = 0.0;
    std::vector<PartitionRecord> partitions;
    std::int64_t discovered_capacity_bytes = 0;
    bool limit_reached = false;  // false: corpus ran out while still viable
    ScanState scan_state;
};

// Pulls raw-data partitions until empty; nullopt ends the corpus.
using PartitionSource = std::function<std::optional<std::vector<std::uint8_t>>()>;

// The incremental discovery experiment: encode each partition, scan its
// payload units against the library, and stop when the usable primers can
// no longer accommodate the cumulative data.
CapacityReport discover_capacity(PartitionSource source, Scheme scheme,
                                 const PrimerLibrary& library,
                                 const IndexTable& index_table,
                                 const TubeParams& tube,
                                 const CollisionParams& collision,
                                 const FountainParams& fountain,
                                 std::uint64_t fountain_seed);

// partition,cumulative_bytes,usable,needed rows.
void write_capacity_csv(const CapacityReport& report, const std::string& path);
void write_capacity_json(const CapacityReport& report, const std::string& path);

}  // namespace dna
