#include "dnastore/capacity.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "dnastore/pipeline.hpp"

namespace dna {

void TubeParams::validate() const {
    if (parallel_factor < 1 || payload_len_nt < 1 || index_len_nt < 0 ||
        primer_len_nt < 1 || partition_data_size < 1)
        throw std::domain_error("TubeParams: nonpositive field");
    if (ecc_data_bytes < 1 || ecc_code_bytes <= ecc_data_bytes)
        throw std::domain_error("TubeParams: bad ecc fraction");
    if (strand_len_nt() > 300)
        throw std::domain_error("TubeParams: strand length exceeds 300 nt");
}

namespace {

using int128 = __int128;

std::int64_t ceil_div_i128(int128 a, int128 b) {
    return static_cast<std::int64_t>((a + b - 1) / b);
}

}  // namespace

std::int64_t primers_needed(std::int64_t data_bytes, double density,
                            const TubeParams& params) {
    if (density <= 0) throw std::domain_error("primers_needed: density must be > 0");
    if (data_bytes < 0) throw std::domain_error("primers_needed: negative data size");
    if (data_bytes == 0) return 0;
    const auto d6 = static_cast<int128>(std::llround(density * 1e6));
    // strands = ceil(data * 8 * (code/data_ecc) / density / payload_len)
    const int128 num = static_cast<int128>(data_bytes) * 8 *
                       params.ecc_code_bytes * 1'000'000;
    const int128 den = static_cast<int128>(params.ecc_data_bytes) * d6 *
                       params.payload_len_nt;
    const std::int64_t strands = ceil_div_i128(num, den);
    const std::int64_t pairs =
        (strands + params.parallel_factor - 1) / params.parallel_factor;
    return 2 * pairs;
}

double theoretical_capacity_bytes(std::int64_t primer_count, double density,
                                  const TubeParams& params) {
    const double pairs = static_cast<double>(primer_count / 2);
    return pairs * static_cast<double>(params.parallel_factor) *
           params.payload_len_nt * density / 8.0 * params.ecc_fraction();
}

double bytes_to_gib(double bytes) { return bytes / 1073741824.0; }

std::vector<Strand> assemble_strands(const std::vector<DnaSeq>& payloads,
                                     const IndexTable& index_table,
                                     PrimerPair pair, const TubeParams& params) {
    if (static_cast<std::int64_t>(payloads.size()) > params.parallel_factor)
        throw std::domain_error(
            "assemble_strands: payload count exceeds the parallel factor; "
            "allocate a new primer pair");
    if (payloads.size() > index_table.size())
        throw std::domain_error("assemble_strands: index table too small");
    std::vector<Strand> out;
    out.reserve(payloads.size());
    for (std::size_t i = 0; i < payloads.size(); ++i)
        out.push_back({pair.fwd_id, static_cast<std::int64_t>(i), payloads[i],
                       pair.rev_id});
    return out;
}

DnaSeq strand_sequence(const Strand& strand, const PrimerLibrary& library,
                       const IndexTable& index_table) {
    DnaSeq out = library.primers.at(static_cast<std::size_t>(strand.fwd_primer_id)).seq;
    out.append(index_table.seq_at(static_cast<std::size_t>(strand.index_ordinal)));
    out.append(strand.payload);
    out.append(reverse_complement(
        library.primers.at(static_cast<std::size_t>(strand.rev_primer_id)).seq));
    return out;
}

Strand disassemble_strand(const DnaSeq& full, const PrimerLibrary& library,
                          const IndexTable& index_table, const TubeParams& params) {
    const std::size_t plen = static_cast<std::size_t>(params.primer_len_nt);
    const std::size_t ilen = static_cast<std::size_t>(params.index_len_nt);
    if (full.size() < 2 * plen + ilen + 1)
        throw std::runtime_error("disassemble_strand: sequence too short");

    const DnaSeq fwd = full.subseq(0, plen);
    const DnaSeq index = full.subseq(plen, ilen);
    const DnaSeq payload = full.subseq(plen + ilen, full.size() - 2 * plen - ilen);
    const DnaSeq rev = reverse_complement(full.subseq(full.size() - plen, plen));

    Strand s;
    s.payload = payload;
    bool have_fwd = false, have_rev = false;
    for (const Primer& p : library.primers) {
        if (!have_fwd && p.seq == fwd) {
            s.fwd_primer_id = p.id;
            have_fwd = true;
        }
        if (!have_rev && p.seq == rev) {
            s.rev_primer_id = p.id;
            have_rev = true;
        }
    }
    if (!have_fwd || !have_rev)
        throw std::runtime_error("disassemble_strand: unknown primer region");
    const auto ord = index_table.ordinal_of(index);
    if (!ord) throw std::runtime_error("disassemble_strand: unknown internal index");
    s.index_ordinal = static_cast<std::int64_t>(*ord);
    return s;
}

CapacityReport discover_capacity(PartitionSource source, Scheme scheme,
                                 const PrimerLibrary& library,
                                 const IndexTable& index_table,
                                 const TubeParams& tube,
                                 const CollisionParams& collision,
                                 const FountainParams& fountain,
                                 std::uint64_t fountain_seed) {
    tube.validate();
    CapacityReport report;
    report.scheme = scheme;
    report.nominal_density = descriptor_for(scheme).nominal_density;

    const CollisionScanner scanner(library, collision);
    report.scan_state = scanner.new_state();

    std::int64_t cumulative = 0, strands = 0, k = 0;
    std::int64_t discovered = 0;
    EncodeOptions opt;
    opt.scheme = scheme;
    opt.tube = tube;
    opt.fountain = fountain;

    while (auto part = source()) {
        if (part->empty()) continue;
        ++k;
        cumulative += static_cast<std::int64_t>(part->size());
        // per-partition master seed keeps droplet streams distinct
        opt.fountain_seed = fountain_seed + static_cast<std::uint64_t>(k);
        const auto payloads = encode_to_payloads(*part, opt);
        const auto units = payload_units(payloads, index_table, tube, strands);
        for (const DnaSeq& u : units) scanner.scan_unit(u, report.scan_state);
        strands += static_cast<std::int64_t>(units.size());

        std::int64_t usable = 0;
        for (std::uint64_t c : report.scan_state.counts)
            if (c == 0) ++usable;
        const std::int64_t needed =
            primers_needed(cumulative, report.nominal_density, tube);
        report.partitions.push_back({k, cumulative, usable, needed, strands});
        if (usable < needed) {
            report.limit_reached = true;
            break;
        }
        discovered = cumulative;
    }
    report.discovered_capacity_bytes = discovered;
    return report;
}

void write_capacity_csv(const CapacityReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "partition,cumulative_bytes,usable,needed\n";
    for (const auto& r : report.partitions)
        out << r.partition << ',' << r.cumulative_bytes << ',' << r.usable_primers
            << ',' << r.needed_primers << '\n';
}

void write_capacity_json(const CapacityReport& report, const std::string& path) {
    nlohmann::json j;
    j["scheme"] = scheme_name(report.scheme);
    j["nominal_density_bits_per_base"] = report.nominal_density;
    j["discovered_capacity_bytes"] = report.discovered_capacity_bytes;
    j["discovered_capacity_gib"] =
        bytes_to_gib(static_cast<double>(report.discovered_capacity_bytes));
    j["limit_reached"] = report.limit_reached;
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& r : report.partitions)
        parts.push_back({{"partition", r.partition},
                         {"cumulative_bytes", r.cumulative_bytes},
                         {"usable_primers", r.usable_primers},
                         {"needed_primers", r.needed_primers},
                         {"cumulative_strands", r.cumulative_strands}});
    j["partitions"] = parts;
    const CollisionHistogram h = collision_histogram(report.scan_state);
    j["usable_primer_count"] = h.usable;
    j["collided_primer_count"] = h.collided;
    j["mean_collisions_per_collided_primer"] = h.mean_collisions_per_collided;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << j.dump(2) << '\n';
}

}  // namespace dna
