#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dnastore/seq.hpp"

namespace dna {

struct PrimerRules {
    int primer_length = 20;
    double gc_min = 0.45, gc_max = 0.55;      // inclusive
    double tm_min = 55.0, tm_max = 60.0;      // inclusive, Wallace model
    int max_homopolymer = 3;
    int min_hamming = 6;                      // against every admitted primer
    int max_inter_complement = 10;
    int max_intra_complement = 4;
    TmModel tm_model = melting_temp_wallace;
};

enum class PrimerCriterion {
    GcContent = 0,
    MeltingTemp,
    Homopolymer,
    HammingDistance,
    InterComplement,
    IntraComplement,
};

const char* criterion_name(PrimerCriterion c);

struct PrimerViolation {
    PrimerCriterion criterion;
    int against_id;  // offending admitted primer for pairwise rules, else -1
    double value;    // measured value that broke the bound
};

struct Primer {
    int id = 0;
    DnaSeq seq;
};

struct GenerationStats {
    std::uint64_t attempts = 0;
    std::uint64_t accepted = 0;
    std::array<std::uint64_t, 6> rejections_by_criterion{};
    // attempts consumed when each primer was admitted; the acceptance-rate
    // trace is derived from this
    std::vector<std::uint64_t> attempts_at_admission;
    bool saturated = false;  // max_attempts hit before reaching the target
};

struct PrimerLibrary {
    PrimerRules rules;
    std::uint64_t rng_seed = 0;
    std::vector<Primer> primers;
    GenerationStats stats;
};

// Evaluates all six criteria; violations lists every violated criterion.
// Throws std::invalid_argument when the candidate length differs from
// rules.primer_length.
std::vector<PrimerViolation> check_primer(const DnaSeq& candidate,
                                          const PrimerLibrary& library);

// Deterministic for a fixed seed: draws uniform random sequences from the
// pinned xorshift64* generator and admits those passing check_primer.
PrimerLibrary generate_primers(std::uint64_t seed, std::size_t target,
                               const PrimerRules& rules,
                               std::uint64_t max_attempts = 0);  // 0: 10000*target

// Exhaustive recheck of every individual and pairwise invariant, computed
// with the plain metric operations (no prefilters).
std::vector<std::pair<int, PrimerViolation>> audit_library(const PrimerLibrary& lib);

// FASTA (ids primer_<ordinal>) plus a JSON header with rules, seed and stats.
void save_library(const PrimerLibrary& lib, const std::string& path_prefix);

// Loads and audits; throws std::runtime_error when the audit reports
// violations.
PrimerLibrary load_library(const std::string& path_prefix);

}  // namespace dna
