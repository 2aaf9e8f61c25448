#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dnastore/capacity.hpp"
#include "dnastore/codec.hpp"
#include "dnastore/collision.hpp"
#include "dnastore/fountain.hpp"
#include "dnastore/primer.hpp"

namespace dna {

// One data-bearing payload sequence plus its origin. chunk_id is the RS
// codeword index for the block schemes and the droplet ordinal for Fountain.
struct PayloadSeq {
    DnaSeq seq;
    std::int64_t chunk_id = 0;
};

struct EncodeOptions {
    Scheme scheme = Scheme::Rotation;
    TubeParams tube;
    FountainParams fountain;
    std::uint64_t fountain_seed = 1;
};

// file bytes -> RS codewords -> scheme encoding -> payload cuts.
std::vector<PayloadSeq> encode_to_payloads(const std::vector<std::uint8_t>& bytes,
                                           const EncodeOptions& opt);

// Payload units as scanned and stored: internal index prepended to payload.
// first_ordinal continues a global strand counter across partitions.
std::vector<DnaSeq> payload_units(const std::vector<PayloadSeq>& payloads,
                                  const IndexTable& index_table,
                                  const TubeParams& tube,
                                  std::int64_t first_ordinal = 0);

struct EncodedFile {
    std::string file_id;
    Scheme scheme = Scheme::Rotation;
    std::int64_t size_bytes = 0;
    std::int64_t chunk_count = 0;
    std::vector<PrimerPair> pairs;
    std::vector<Strand> strands;
    std::vector<std::int64_t> chunk_ids;  // parallel to strands
    // fountain bookkeeping
    std::int64_t segment_count = 0;
    std::int64_t droplet_count = 0;
    std::int64_t padded_tail_bytes = 0;
    std::uint64_t fountain_seed = 0;
};

EncodedFile encode_file(const std::vector<std::uint8_t>& bytes,
                        const std::string& file_id, const EncodeOptions& opt,
                        const PrimerLibrary& library, const IndexTable& index_table);

void write_encoded_fasta(const EncodedFile& enc, const PrimerLibrary& library,
                         const IndexTable& index_table, const std::string& path);
void write_sidecar_json(const EncodedFile& enc, const EncodeOptions& opt,
                        const std::string& path);

struct DecodedFile {
    std::vector<std::uint8_t> bytes;
    std::vector<std::int64_t> failed_chunks;  // RS or codec failures, by chunk id
    bool ok() const { return failed_chunks.empty(); }
};

// Inverts encode_file from the strand FASTA + sidecar. Missing or corrupt
// chunks beyond RS capability land in failed_chunks; their bytes are zero
// filled.
DecodedFile decode_file(const std::string& fasta_path, const std::string& sidecar_path,
                        const PrimerLibrary& library, const IndexTable& index_table);

}  // namespace dna
