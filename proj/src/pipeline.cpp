#include "dnastore/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "dnastore/fasta.hpp"
#include "dnastore/rs.hpp"

namespace dna {
namespace {

struct BuildMeta {
    std::int64_t segment_count = 0;
    std::int64_t droplet_count = 0;
    std::int64_t padded_tail_bytes = 0;
};

std::vector<std::vector<std::uint8_t>> rs_codewords(
    const std::vector<std::uint8_t>& bytes) {
    std::vector<std::vector<std::uint8_t>> out;
    for (std::size_t off = 0; off < bytes.size(); off += rs::kMaxData) {
        const std::size_t len = std::min<std::size_t>(rs::kMaxData, bytes.size() - off);
        out.push_back(rs::encode(std::span(bytes).subspan(off, len)));
    }
    return out;
}

std::size_t scheme_encoded_len(Scheme scheme, std::size_t codeword_bytes) {
    switch (scheme) {
        case Scheme::Church: return codeword_bytes * 8;
        case Scheme::Rotation: return rotation_encoded_len(codeword_bytes);
        case Scheme::Blawat: return codeword_bytes * 5;
        case Scheme::Grass: return grass_encoded_len(codeword_bytes);
        case Scheme::Fountain: break;
    }
    throw std::invalid_argument("scheme_encoded_len: fountain has no per-codeword length");
}

DnaSeq scheme_encode(Scheme scheme, std::span<const std::uint8_t> codeword) {
    switch (scheme) {
        case Scheme::Church: return church_encode(codeword);
        case Scheme::Rotation: return rotation_encode(codeword);
        case Scheme::Blawat: return blawat_encode(codeword);
        case Scheme::Grass: return grass_encode(codeword);
        case Scheme::Fountain: break;
    }
    throw std::invalid_argument("scheme_encode: fountain is stream based");
}

std::vector<std::uint8_t> scheme_decode(Scheme scheme, const DnaSeq& seq,
                                        std::size_t codeword_bytes) {
    switch (scheme) {
        case Scheme::Church: return church_decode(seq);
        case Scheme::Rotation: return rotation_decode(seq, codeword_bytes);
        case Scheme::Blawat: return blawat_decode(seq);
        case Scheme::Grass: return grass_decode(seq, codeword_bytes);
        case Scheme::Fountain: break;
    }
    throw std::invalid_argument("scheme_decode: fountain is stream based");
}

std::vector<PayloadSeq> build_payloads(const std::vector<std::uint8_t>& bytes,
                                       const EncodeOptions& opt, BuildMeta* meta) {
    opt.tube.validate();
    std::vector<PayloadSeq> out;
    if (bytes.empty()) return out;
    const auto codewords = rs_codewords(bytes);
    const auto payload_len = static_cast<std::size_t>(opt.tube.payload_len_nt);

    if (opt.scheme != Scheme::Fountain) {
        for (std::size_t ci = 0; ci < codewords.size(); ++ci) {
            const DnaSeq nt = scheme_encode(opt.scheme, codewords[ci]);
            for (std::size_t off = 0; off < nt.size(); off += payload_len) {
                const std::size_t len = std::min(payload_len, nt.size() - off);
                out.push_back({nt.subseq(off, len), static_cast<std::int64_t>(ci)});
            }
        }
        return out;
    }

    // Fountain: the codeword stream is resegmented and Luby transformed.
    std::vector<std::uint8_t> stream;
    for (const auto& cw : codewords) stream.insert(stream.end(), cw.begin(), cw.end());
    const std::size_t seg = opt.fountain.segment_size;
    const std::size_t nseg = (stream.size() + seg - 1) / seg;
    const std::size_t padded = nseg * seg;
    if (meta) meta->padded_tail_bytes = static_cast<std::int64_t>(padded - stream.size());
    stream.resize(padded, 0);
    std::vector<std::vector<std::uint8_t>> segments(nseg);
    for (std::size_t i = 0; i < nseg; ++i)
        segments[i].assign(stream.begin() + static_cast<std::ptrdiff_t>(i * seg),
                           stream.begin() + static_cast<std::ptrdiff_t>((i + 1) * seg));
    const auto droplets = fountain_encode(segments, opt.fountain, opt.fountain_seed);
    if (meta) {
        meta->segment_count = static_cast<std::int64_t>(nseg);
        meta->droplet_count = static_cast<std::int64_t>(droplets.size());
    }
    for (std::size_t di = 0; di < droplets.size(); ++di) {
        DnaSeq s = droplets[di].to_dna();
        if (s.size() > payload_len)
            throw std::domain_error("fountain droplet exceeds the payload length");
        // fixed alternating AC suffix pads the droplet to the payload length
        const std::size_t base = s.size();
        for (std::size_t k = base; k < payload_len; ++k)
            s.push_back((k - base) % 2 == 0 ? Base::A : Base::C);
        out.push_back({std::move(s), static_cast<std::int64_t>(di)});
    }
    return out;
}

}  // namespace

std::vector<PayloadSeq> encode_to_payloads(const std::vector<std::uint8_t>& bytes,
                                           const EncodeOptions& opt) {
    return build_payloads(bytes, opt, nullptr);
}

std::vector<DnaSeq> payload_units(const std::vector<PayloadSeq>& payloads,
                                  const IndexTable& index_table,
                                  const TubeParams& tube,
                                  std::int64_t first_ordinal) {
    std::vector<DnaSeq> out;
    out.reserve(payloads.size());
    for (std::size_t i = 0; i < payloads.size(); ++i) {
        const std::int64_t ordinal =
            (first_ordinal + static_cast<std::int64_t>(i)) % tube.parallel_factor;
        if (ordinal >= static_cast<std::int64_t>(index_table.size()))
            throw std::domain_error("payload_units: index table smaller than ordinal");
        DnaSeq unit = index_table.seq_at(static_cast<std::size_t>(ordinal));
        unit.append(payloads[i].seq);
        out.push_back(std::move(unit));
    }
    return out;
}

EncodedFile encode_file(const std::vector<std::uint8_t>& bytes,
                        const std::string& file_id, const EncodeOptions& opt,
                        const PrimerLibrary& library, const IndexTable& index_table) {
    BuildMeta meta;
    const auto payloads = build_payloads(bytes, opt, &meta);

    EncodedFile enc;
    enc.file_id = file_id;
    enc.scheme = opt.scheme;
    enc.size_bytes = static_cast<std::int64_t>(bytes.size());
    enc.chunk_count =
        static_cast<std::int64_t>((bytes.size() + rs::kMaxData - 1) / rs::kMaxData);
    enc.segment_count = meta.segment_count;
    enc.droplet_count = meta.droplet_count;
    enc.padded_tail_bytes = meta.padded_tail_bytes;
    enc.fountain_seed = opt.fountain_seed;

    const std::int64_t n = static_cast<std::int64_t>(payloads.size());
    const std::int64_t pair_count =
        n == 0 ? 0 : (n + opt.tube.parallel_factor - 1) / opt.tube.parallel_factor;
    if (2 * pair_count > static_cast<std::int64_t>(library.primers.size()))
        throw std::runtime_error("encode_file: primer library too small for the data");
    for (std::int64_t g = 0; g < pair_count; ++g)
        enc.pairs.push_back({static_cast<int>(2 * g), static_cast<int>(2 * g + 1)});

    enc.strands.reserve(payloads.size());
    enc.chunk_ids.reserve(payloads.size());
    for (std::int64_t i = 0; i < n; ++i) {
        const std::int64_t g = i / opt.tube.parallel_factor;
        const std::int64_t ord = i % opt.tube.parallel_factor;
        if (ord >= static_cast<std::int64_t>(index_table.size()))
            throw std::runtime_error("encode_file: index table smaller than parallel factor use");
        enc.strands.push_back({enc.pairs[static_cast<std::size_t>(g)].fwd_id, ord,
                               payloads[static_cast<std::size_t>(i)].seq,
                               enc.pairs[static_cast<std::size_t>(g)].rev_id});
        enc.chunk_ids.push_back(payloads[static_cast<std::size_t>(i)].chunk_id);
    }
    return enc;
}

void write_encoded_fasta(const EncodedFile& enc, const PrimerLibrary& library,
                         const IndexTable& index_table, const std::string& path) {
    std::vector<FastaRecord> recs;
    recs.reserve(enc.strands.size());
    for (std::size_t i = 0; i < enc.strands.size(); ++i)
        recs.push_back({enc.file_id + "|" + std::to_string(enc.chunk_ids.at(i)) + "|" +
                            scheme_name(enc.scheme),
                        strand_sequence(enc.strands[i], library, index_table)});
    write_fasta_file(path, recs);
}

void write_sidecar_json(const EncodedFile& enc, const EncodeOptions& opt,
                        const std::string& path) {
    nlohmann::json j;
    j["format"] = "dnastore-sidecar-v1";
    j["file_id"] = enc.file_id;
    j["scheme"] = scheme_name(enc.scheme);
    j["size_bytes"] = enc.size_bytes;
    j["chunk_size_bytes"] = rs::kMaxData;
    j["chunk_count"] = enc.chunk_count;
    j["payload_len_nt"] = opt.tube.payload_len_nt;
    j["index_len_nt"] = opt.tube.index_len_nt;
    j["primer_len_nt"] = opt.tube.primer_len_nt;
    j["parallel_factor"] = opt.tube.parallel_factor;
    j["nominal_density_bits_per_base"] = descriptor_for(enc.scheme).nominal_density;
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : enc.pairs) pairs.push_back({p.fwd_id, p.rev_id});
    j["primer_pairs"] = pairs;
    if (enc.scheme == Scheme::Fountain) {
        j["fountain"] = {
            {"segment_size_bytes", opt.fountain.segment_size},
            {"segment_count", enc.segment_count},
            {"droplet_count", enc.droplet_count},
            {"padded_tail_bytes", enc.padded_tail_bytes},
            {"master_seed", enc.fountain_seed},
            {"redundancy", opt.fountain.redundancy},
            {"soliton_c", opt.fountain.soliton_c},
            {"soliton_delta", opt.fountain.soliton_delta},
            {"gc_min_fraction", opt.fountain.gc_min},
            {"gc_max_fraction", opt.fountain.gc_max},
            {"max_homopolymer_nt", opt.fountain.max_homopolymer},
        };
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << j.dump(2) << '\n';
}

DecodedFile decode_file(const std::string& fasta_path, const std::string& sidecar_path,
                        const PrimerLibrary& library, const IndexTable& index_table) {
    std::ifstream in(sidecar_path);
    if (!in) throw std::runtime_error("cannot open " + sidecar_path);
    nlohmann::json j;
    in >> j;

    const Scheme scheme = scheme_from_name(j.at("scheme").get<std::string>());
    const std::int64_t size_bytes = j.at("size_bytes").get<std::int64_t>();
    const std::int64_t chunk_count = j.at("chunk_count").get<std::int64_t>();
    TubeParams tube;
    tube.payload_len_nt = j.at("payload_len_nt").get<int>();
    tube.index_len_nt = j.at("index_len_nt").get<int>();
    tube.primer_len_nt = j.at("primer_len_nt").get<int>();
    tube.parallel_factor = j.at("parallel_factor").get<std::int64_t>();

    std::vector<PrimerPair> pairs;
    for (const auto& p : j.at("primer_pairs"))
        pairs.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
    std::unordered_map<int, std::int64_t> group_of_fwd;
    for (std::size_t g = 0; g < pairs.size(); ++g)
        group_of_fwd[pairs[g].fwd_id] = static_cast<std::int64_t>(g);

    // chunk byte sizes and codeword lengths
    std::vector<std::size_t> chunk_bytes;
    for (std::int64_t c = 0; c < chunk_count; ++c) {
        const std::int64_t remaining = size_bytes - c * rs::kMaxData;
        chunk_bytes.push_back(static_cast<std::size_t>(
            std::min<std::int64_t>(rs::kMaxData, remaining)));
    }

    DecodedFile result;
    result.bytes.assign(static_cast<std::size_t>(size_bytes), 0);

    const auto records = read_fasta_file(fasta_path);
    std::vector<std::optional<DnaSeq>> slots;

    auto slot_of = [&](const Strand& s) -> std::int64_t {
        const auto it = group_of_fwd.find(s.fwd_primer_id);
        if (it == group_of_fwd.end()) return -1;
        if (pairs[static_cast<std::size_t>(it->second)].rev_id != s.rev_primer_id)
            return -1;
        return it->second * tube.parallel_factor + s.index_ordinal;
    };

    if (scheme != Scheme::Fountain) {
        // payload slot layout per chunk
        std::vector<std::size_t> pieces_per_chunk, slot_base;
        std::size_t total = 0;
        const auto payload_len = static_cast<std::size_t>(tube.payload_len_nt);
        for (std::size_t c = 0; c < chunk_bytes.size(); ++c) {
            const std::size_t nt =
                scheme_encoded_len(scheme, chunk_bytes[c] + rs::kParityBytes);
            const std::size_t pieces = (nt + payload_len - 1) / payload_len;
            slot_base.push_back(total);
            pieces_per_chunk.push_back(pieces);
            total += pieces;
        }
        slots.assign(total, std::nullopt);
        for (const auto& rec : records) {
            const Strand s = disassemble_strand(rec.seq, library, index_table, tube);
            const std::int64_t n = slot_of(s);
            if (n >= 0 && n < static_cast<std::int64_t>(total) &&
                !slots[static_cast<std::size_t>(n)])
                slots[static_cast<std::size_t>(n)] = s.payload;
        }
        std::size_t out_off = 0;
        for (std::size_t c = 0; c < chunk_bytes.size(); ++c) {
            bool complete = true;
            DnaSeq nt;
            for (std::size_t p = 0; p < pieces_per_chunk[c]; ++p) {
                const auto& slot = slots[slot_base[c] + p];
                if (!slot) {
                    complete = false;
                    break;
                }
                nt.append(*slot);
            }
            bool ok = false;
            if (complete) {
                try {
                    const auto cw = scheme_decode(scheme, nt, chunk_bytes[c] + rs::kParityBytes);
                    const auto dec = rs::decode(cw);
                    if (dec.ok && dec.data.size() == chunk_bytes[c]) {
                        std::copy(dec.data.begin(), dec.data.end(),
                                  result.bytes.begin() + static_cast<std::ptrdiff_t>(out_off));
                        ok = true;
                    }
                } catch (const CodecError&) {
                }
            }
            if (!ok) result.failed_chunks.push_back(static_cast<std::int64_t>(c));
            out_off += chunk_bytes[c];
        }
        return result;
    }

    // Fountain
    const auto& fj = j.at("fountain");
    FountainParams fp;
    fp.segment_size = fj.at("segment_size_bytes").get<std::size_t>();
    fp.redundancy = fj.at("redundancy").get<double>();
    fp.soliton_c = fj.at("soliton_c").get<double>();
    fp.soliton_delta = fj.at("soliton_delta").get<double>();
    const auto segment_count = fj.at("segment_count").get<std::int64_t>();
    const auto droplet_count = fj.at("droplet_count").get<std::int64_t>();
    const auto padded_tail = fj.at("padded_tail_bytes").get<std::int64_t>();

    slots.assign(static_cast<std::size_t>(droplet_count), std::nullopt);
    for (const auto& rec : records) {
        const Strand s = disassemble_strand(rec.seq, library, index_table, tube);
        const std::int64_t n = slot_of(s);
        if (n >= 0 && n < droplet_count && !slots[static_cast<std::size_t>(n)])
            slots[static_cast<std::size_t>(n)] = s.payload;
    }
    std::vector<Droplet> droplets;
    const std::size_t droplet_nt = 16 + 4 * fp.segment_size;
    for (const auto& slot : slots) {
        if (!slot || slot->size() < droplet_nt) continue;
        try {
            droplets.push_back(Droplet::from_dna(slot->subseq(0, droplet_nt)));
        } catch (const CodecError&) {
        }
    }
    const auto dec = fountain_decode(droplets, static_cast<std::size_t>(segment_count), fp);
    if (!dec.ok) {
        for (std::int64_t c = 0; c < chunk_count; ++c) result.failed_chunks.push_back(c);
        return result;
    }
    std::vector<std::uint8_t> stream;
    stream.reserve(static_cast<std::size_t>(segment_count) * fp.segment_size);
    for (const auto& seg : dec.segments) stream.insert(stream.end(), seg.begin(), seg.end());
    stream.resize(stream.size() - static_cast<std::size_t>(padded_tail));

    std::size_t in_off = 0, out_off = 0;
    for (std::size_t c = 0; c < chunk_bytes.size(); ++c) {
        const std::size_t cw_len = chunk_bytes[c] + rs::kParityBytes;
        bool ok = false;
        if (in_off + cw_len <= stream.size()) {
            const auto dec_rs =
                rs::decode(std::span(stream).subspan(in_off, cw_len));
            if (dec_rs.ok && dec_rs.data.size() == chunk_bytes[c]) {
                std::copy(dec_rs.data.begin(), dec_rs.data.end(),
                          result.bytes.begin() + static_cast<std::ptrdiff_t>(out_off));
                ok = true;
            }
        }
        if (!ok) result.failed_chunks.push_back(static_cast<std::int64_t>(c));
        in_off += cw_len;
        out_off += chunk_bytes[c];
    }
    return result;
}

}  // namespace dna
