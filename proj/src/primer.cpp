#include "dnastore/primer.hpp"

#include <fstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "dnastore/fasta.hpp"
#include "dnastore/rng.hpp"

namespace dna {

const char* criterion_name(PrimerCriterion c) {
    switch (c) {
        case PrimerCriterion::GcContent: return "gc_content";
        case PrimerCriterion::MeltingTemp: return "melting_temp";
        case PrimerCriterion::Homopolymer: return "homopolymer";
        case PrimerCriterion::HammingDistance: return "hamming_distance";
        case PrimerCriterion::InterComplement: return "inter_complement";
        case PrimerCriterion::IntraComplement: return "intra_complement";
    }
    return "?";
}

namespace {

// Inclusive ratio bounds compared exactly: gc/len vs bound as integers,
// assuming two-decimal bounds.
bool ratio_in_range(std::size_t count, std::size_t len, double lo, double hi) {
    const auto lo100 = static_cast<std::uint64_t>(lo * 100.0 + 0.5);
    const auto hi100 = static_cast<std::uint64_t>(hi * 100.0 + 0.5);
    return 100 * count >= lo100 * len && 100 * count <= hi100 * len;
}

}  // namespace

std::vector<PrimerViolation> check_primer(const DnaSeq& candidate,
                                          const PrimerLibrary& library) {
    const PrimerRules& rules = library.rules;
    if (static_cast<int>(candidate.size()) != rules.primer_length)
        throw std::invalid_argument("check_primer: wrong candidate length");

    std::vector<PrimerViolation> out;
    std::size_t gc = 0;
    for (std::size_t i = 0; i < candidate.size(); ++i)
        if (is_gc(candidate[i])) ++gc;
    if (!ratio_in_range(gc, candidate.size(), rules.gc_min, rules.gc_max))
        out.push_back({PrimerCriterion::GcContent, -1,
                       static_cast<double>(gc) / static_cast<double>(candidate.size())});

    const double tm = rules.tm_model(candidate);
    if (tm < rules.tm_min || tm > rules.tm_max)
        out.push_back({PrimerCriterion::MeltingTemp, -1, tm});

    const int homo = max_homopolymer(candidate);
    if (homo > rules.max_homopolymer)
        out.push_back({PrimerCriterion::Homopolymer, -1, static_cast<double>(homo)});

    const int intra = longest_intra_complement(candidate);
    if (intra > rules.max_intra_complement)
        out.push_back({PrimerCriterion::IntraComplement, -1, static_cast<double>(intra)});

    for (const Primer& p : library.primers) {
        const int d = hamming(candidate, p.seq);
        if (d < rules.min_hamming) {
            out.push_back({PrimerCriterion::HammingDistance, p.id, static_cast<double>(d)});
            break;
        }
    }
    for (const Primer& p : library.primers) {
        const int ic = longest_inter_complement(candidate, p.seq);
        if (ic > rules.max_inter_complement) {
            out.push_back({PrimerCriterion::InterComplement, p.id, static_cast<double>(ic)});
            break;
        }
    }
    return out;
}

PrimerLibrary generate_primers(std::uint64_t seed, std::size_t target,
                               const PrimerRules& rules,
                               std::uint64_t max_attempts) {
    if (target < 1) throw std::domain_error("generate_primers: target must be >= 1");
    if (max_attempts == 0) max_attempts = 10000 * static_cast<std::uint64_t>(target);

    PrimerLibrary lib;
    lib.rules = rules;
    lib.rng_seed = seed;
    Xorshift64Star rng(seed);

    while (lib.primers.size() < target && lib.stats.attempts < max_attempts) {
        ++lib.stats.attempts;
        const DnaSeq cand = random_seq(rng, static_cast<std::size_t>(rules.primer_length));
        const auto violations = check_primer(cand, lib);
        if (violations.empty()) {
            lib.primers.push_back({static_cast<int>(lib.primers.size()), cand});
            ++lib.stats.accepted;
            lib.stats.attempts_at_admission.push_back(lib.stats.attempts);
        } else {
            for (const auto& v : violations)
                ++lib.stats.rejections_by_criterion[static_cast<int>(v.criterion)];
        }
    }
    lib.stats.saturated = lib.primers.size() < target;
    return lib;
}

std::vector<std::pair<int, PrimerViolation>> audit_library(const PrimerLibrary& lib) {
    std::vector<std::pair<int, PrimerViolation>> out;
    const PrimerRules& rules = lib.rules;
    for (const Primer& p : lib.primers) {
        if (static_cast<int>(p.seq.size()) != rules.primer_length) {
            out.push_back({p.id, {PrimerCriterion::GcContent, -1, -1.0}});
            continue;
        }
        const double gc = gc_content(p.seq);
        std::size_t gc_count = 0;
        for (std::size_t i = 0; i < p.seq.size(); ++i)
            if (is_gc(p.seq[i])) ++gc_count;
        if (!ratio_in_range(gc_count, p.seq.size(), rules.gc_min, rules.gc_max))
            out.push_back({p.id, {PrimerCriterion::GcContent, -1, gc}});
        const double tm = rules.tm_model(p.seq);
        if (tm < rules.tm_min || tm > rules.tm_max)
            out.push_back({p.id, {PrimerCriterion::MeltingTemp, -1, tm}});
        const int homo = max_homopolymer(p.seq);
        if (homo > rules.max_homopolymer)
            out.push_back({p.id, {PrimerCriterion::Homopolymer, -1, static_cast<double>(homo)}});
        const int intra = longest_intra_complement(p.seq);
        if (intra > rules.max_intra_complement)
            out.push_back({p.id, {PrimerCriterion::IntraComplement, -1, static_cast<double>(intra)}});
    }
    for (std::size_t i = 0; i < lib.primers.size(); ++i) {
        for (std::size_t j = i + 1; j < lib.primers.size(); ++j) {
            const Primer& a = lib.primers[i];
            const Primer& b = lib.primers[j];
            const int d = hamming(a.seq, b.seq);
            if (d < rules.min_hamming)
                out.push_back({a.id, {PrimerCriterion::HammingDistance, b.id,
                                      static_cast<double>(d)}});
            const int ic = longest_inter_complement(a.seq, b.seq);
            if (ic > rules.max_inter_complement)
                out.push_back({a.id, {PrimerCriterion::InterComplement, b.id,
                                      static_cast<double>(ic)}});
        }
    }
    return out;
}

void save_library(const PrimerLibrary& lib, const std::string& path_prefix) {
    std::vector<FastaRecord> records;
    records.reserve(lib.primers.size());
    for (const Primer& p : lib.primers)
        records.push_back({"primer_" + std::to_string(p.id), p.seq});
    write_fasta_file(path_prefix + ".fasta", records);

    nlohmann::json j;
    j["rules"] = {
        {"primer_length_nt", lib.rules.primer_length},
        {"gc_min_fraction", lib.rules.gc_min},
        {"gc_max_fraction", lib.rules.gc_max},
        {"tm_min_c", lib.rules.tm_min},
        {"tm_max_c", lib.rules.tm_max},
        {"max_homopolymer_nt", lib.rules.max_homopolymer},
        {"min_hamming_distance", lib.rules.min_hamming},
        {"max_inter_complement_nt", lib.rules.max_inter_complement},
        {"max_intra_complement_nt", lib.rules.max_intra_complement},
        {"tm_model", "wallace"},
    };
    j["rng_seed"] = lib.rng_seed;
    j["primer_count"] = lib.primers.size();
    j["stats"] = {
        {"attempts", lib.stats.attempts},
        {"accepted", lib.stats.accepted},
        {"saturated", lib.stats.saturated},
        {"attempts_at_admission", lib.stats.attempts_at_admission},
    };
    nlohmann::json rej = nlohmann::json::object();
    for (int c = 0; c < 6; ++c)
        rej[criterion_name(static_cast<PrimerCriterion>(c))] =
            lib.stats.rejections_by_criterion[static_cast<std::size_t>(c)];
    j["stats"]["rejections"] = rej;

    std::ofstream out(path_prefix + ".json");
    if (!out) throw std::runtime_error("cannot open " + path_prefix + ".json");
    out << j.dump(2) << '\n';
}

PrimerLibrary load_library(const std::string& path_prefix) {
    std::ifstream in(path_prefix + ".json");
    if (!in) throw std::runtime_error("cannot open " + path_prefix + ".json");
    nlohmann::json j;
    in >> j;

    PrimerLibrary lib;
    const auto& r = j.at("rules");
    lib.rules.primer_length = r.at("primer_length_nt").get<int>();
    lib.rules.gc_min = r.at("gc_min_fraction").get<double>();
    lib.rules.gc_max = r.at("gc_max_fraction").get<double>();
    lib.rules.tm_min = r.at("tm_min_c").get<double>();
    lib.rules.tm_max = r.at("tm_max_c").get<double>();
    lib.rules.max_homopolymer = r.at("max_homopolymer_nt").get<int>();
    lib.rules.min_hamming = r.at("min_hamming_distance").get<int>();
    lib.rules.max_inter_complement = r.at("max_inter_complement_nt").get<int>();
    lib.rules.max_intra_complement = r.at("max_intra_complement_nt").get<int>();
    lib.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    lib.stats.attempts = j.at("stats").at("attempts").get<std::uint64_t>();
    lib.stats.accepted = j.at("stats").at("accepted").get<std::uint64_t>();
    lib.stats.saturated = j.at("stats").at("saturated").get<bool>();
    lib.stats.attempts_at_admission =
        j.at("stats").at("attempts_at_admission").get<std::vector<std::uint64_t>>();

    const auto records = read_fasta_file(path_prefix + ".fasta");
    lib.primers.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i)
        lib.primers.push_back({static_cast<int>(i), records[i].seq});
    if (lib.primers.size() != j.at("primer_count").get<std::size_t>())
        throw std::runtime_error("primer library: FASTA/JSON record count mismatch");

    if (!audit_library(lib).empty())
        throw std::runtime_error("primer library failed audit on load: " + path_prefix);
    return lib;
}

}  // namespace dna
