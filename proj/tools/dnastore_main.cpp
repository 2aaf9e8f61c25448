#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dnastore/capacity.hpp"
#include "dnastore/config.hpp"
#include "dnastore/fasta.hpp"
#include "dnastore/pipeline.hpp"

namespace fs = std::filesystem;
using namespace dna;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitWarn = 2;
constexpr int kExitCorrupt = 3;
constexpr int kExitUsage = 64;

std::vector<std::uint8_t> read_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

void write_binary(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

struct CommonOpts {
    std::string config_path;
    ToolConfig config;

    void load() {
        if (!config_path.empty()) config = ToolConfig::parse_file(config_path);
    }
};

int cmd_gen_primers(const CommonOpts& common, std::uint64_t seed, std::int64_t count,
                    std::uint64_t max_attempts, const std::string& out_prefix) {
    if (count < 1) {
        std::cerr << "gen-primers: --count must be >= 1\n";
        return kExitUsage;
    }
    const PrimerLibrary lib = generate_primers(
        seed, static_cast<std::size_t>(count), common.config.primer, max_attempts);
    save_library(lib, out_prefix);
    std::cout << "primers: " << lib.primers.size() << " of " << count
              << " requested, " << lib.stats.attempts << " attempts\n";
    if (lib.stats.saturated) {
        std::cerr << "warning: attempt budget exhausted before reaching the target\n";
        return kExitWarn;
    }
    return kExitOk;
}

int cmd_gen_indexes(const CommonOpts& common, const std::string& primers,
                    std::int64_t count, int length, const std::string& out) {
    if (count < 1) {
        std::cerr << "gen-indexes: --count must be >= 1\n";
        return kExitUsage;
    }
    const PrimerLibrary lib = load_library(primers);
    const IndexTable table = gen_internal_indexes(
        lib, static_cast<std::size_t>(count), length, common.config.collision);
    save_index_table(table, out);
    std::cout << "indexes: " << table.size() << " written to " << out << "\n";
    return kExitOk;
}

int cmd_encode(const CommonOpts& common, const std::string& scheme_name_,
               const std::string& in, const std::string& primers,
               const std::string& indexes, const std::string& out_prefix) {
    EncodeOptions opt;
    opt.scheme = scheme_from_name(scheme_name_);
    opt.tube = common.config.tube;
    opt.fountain = common.config.fountain;
    opt.fountain_seed = common.config.fountain_seed;
    const PrimerLibrary lib = load_library(primers);
    const IndexTable table = load_index_table(indexes);
    const auto bytes = read_binary(in);
    const std::string file_id = fs::path(in).filename().string();
    const EncodedFile enc = encode_file(bytes, file_id, opt, lib, table);
    write_encoded_fasta(enc, lib, table, out_prefix + ".fasta");
    write_sidecar_json(enc, opt, out_prefix + ".json");
    std::cout << "encoded " << bytes.size() << " bytes into " << enc.strands.size()
              << " strands (" << scheme_name(opt.scheme) << ")\n";
    return kExitOk;
}

int cmd_decode(const std::string& in_prefix, const std::string& primers,
               const std::string& indexes, const std::string& out) {
    const PrimerLibrary lib = load_library(primers);
    const IndexTable table = load_index_table(indexes);
    const DecodedFile dec =
        decode_file(in_prefix + ".fasta", in_prefix + ".json", lib, table);
    write_binary(out, dec.bytes);
    if (!dec.ok()) {
        std::cerr << "decode: " << dec.failed_chunks.size()
                  << " chunk(s) beyond repair:";
        for (auto c : dec.failed_chunks) std::cerr << ' ' << c;
        std::cerr << '\n';
        return kExitCorrupt;
    }
    std::cout << "decoded " << dec.bytes.size() << " bytes to " << out << "\n";
    return kExitOk;
}

int cmd_scan(const CommonOpts& common, const std::string& primers,
             const std::string& payloads, const std::string& out_prefix) {
    const PrimerLibrary lib = load_library(primers);
    const CollisionScanner scanner(lib, common.config.collision);
    ScanState state = scanner.new_state();
    const auto records = read_fasta_file(payloads);
    for (const auto& rec : records) scanner.scan_unit(rec.seq, state);
    write_scan_csv(state, out_prefix + ".csv");
    write_scan_summary_json(state, out_prefix + ".json");
    const CollisionHistogram h = collision_histogram(state);
    std::cout << "scanned " << state.units_scanned << " payload units: " << h.usable
              << " usable primers, " << h.collided << " collided\n";
    return kExitOk;
}

int cmd_estimate(const CommonOpts& common, const std::string& corpus_dir,
                 const std::string& scheme_name_, const std::string& primers,
                 const std::string& indexes, std::int64_t partition_bytes,
                 const std::string& out_prefix) {
    const PrimerLibrary lib = load_library(primers);
    const IndexTable table = load_index_table(indexes);
    TubeParams tube = common.config.tube;
    if (partition_bytes > 0) tube.partition_data_size = partition_bytes;

    // files in lexicographic order, concatenated, cut into partitions
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(corpus_dir))
        if (entry.is_regular_file()) files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        std::cerr << "estimate: no files in " << corpus_dir << "\n";
        return kExitUsage;
    }

    auto file_it = std::make_shared<std::size_t>(0);
    auto carry = std::make_shared<std::vector<std::uint8_t>>();
    auto shared_files = std::make_shared<std::vector<std::string>>(std::move(files));
    const std::int64_t psize = tube.partition_data_size;
    PartitionSource source = [file_it, carry, shared_files,
                              psize]() -> std::optional<std::vector<std::uint8_t>> {
        while (static_cast<std::int64_t>(carry->size()) < psize &&
               *file_it < shared_files->size()) {
            const auto bytes = read_binary((*shared_files)[(*file_it)++]);
            carry->insert(carry->end(), bytes.begin(), bytes.end());
        }
        if (carry->empty()) return std::nullopt;
        const std::size_t take =
            std::min<std::size_t>(carry->size(), static_cast<std::size_t>(psize));
        std::vector<std::uint8_t> part(carry->begin(), carry->begin() + take);
        carry->erase(carry->begin(), carry->begin() + take);
        return part;
    };

    const CapacityReport report = discover_capacity(
        std::move(source), scheme_from_name(scheme_name_), lib, table, tube,
        common.config.collision, common.config.fountain, common.config.fountain_seed);
    write_capacity_csv(report, out_prefix + ".csv");
    write_capacity_json(report, out_prefix + ".json");
    std::cout << "discovered capacity: " << report.discovered_capacity_bytes
              << " bytes ("
              << bytes_to_gib(static_cast<double>(report.discovered_capacity_bytes))
              << " GiB)" << (report.limit_reached ? "" : " [corpus exhausted]") << "\n";
    return kExitOk;
}

int cmd_simulate_pcr(const CommonOpts& common, const std::string& out) {
    const PcrTrace trace = simulate(common.config.pcr);
    write_trace_csv(trace, out);
    std::cout << "final target fraction: " << trace.final_target_fraction << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DNA archival storage codec and tube-capacity toolkit"};
    app.require_subcommand(1);
    CommonOpts common;
    app.add_option("--config", common.config_path, "flat key = value config file");

    auto* gen = app.add_subcommand("gen-primers", "generate a primer library");
    std::uint64_t seed = 1;
    std::int64_t count = 0;
    std::uint64_t max_attempts = 0;
    std::string out_prefix, in_path, primers, indexes, scheme, payloads, corpus;
    std::int64_t partition_bytes = 0;
    int index_len = 12;
    gen->add_option("--seed", seed, "rng seed");
    gen->add_option("--count", count, "primers to generate")->required();
    gen->add_option("--max-attempts", max_attempts, "0 = 10000 * count");
    gen->add_option("--out", out_prefix, "output prefix (.fasta/.json)")->required();

    auto* gidx = app.add_subcommand("gen-indexes", "generate internal index table");
    gidx->add_option("--primers", primers, "primer library prefix")->required();
    gidx->add_option("--count", count, "indexes to generate")->required();
    gidx->add_option("--length", index_len, "index length in nt");
    gidx->add_option("--out", out_prefix, "output FASTA path")->required();

    auto* enc = app.add_subcommand("encode", "encode a file into DNA strands");
    enc->add_option("--scheme", scheme, "church|rotation|blawat|grass|fountain")
        ->required();
    enc->add_option("--in", in_path, "input file")->required();
    enc->add_option("--primers", primers, "primer library prefix")->required();
    enc->add_option("--indexes", indexes, "index table FASTA")->required();
    enc->add_option("--out", out_prefix, "output prefix (.fasta/.json)")->required();

    auto* dec = app.add_subcommand("decode", "decode strands back to the file");
    dec->add_option("--in", in_path, "encoded prefix (.fasta/.json)")->required();
    dec->add_option("--primers", primers, "primer library prefix")->required();
    dec->add_option("--indexes", indexes, "index table FASTA")->required();
    dec->add_option("--out", out_prefix, "output file")->required();

    auto* scn = app.add_subcommand("scan", "collision-scan payload units");
    scn->add_option("--primers", primers, "primer library prefix")->required();
    scn->add_option("--payloads", payloads, "payload FASTA")->required();
    scn->add_option("--out", out_prefix, "report prefix (.csv/.json)")->required();

    auto* est = app.add_subcommand("estimate", "discover tube capacity on a corpus");
    est->add_option("--corpus-dir", corpus, "directory of input files")->required();
    est->add_option("--scheme", scheme, "church|rotation|blawat|grass|fountain")
        ->required();
    est->add_option("--primers", primers, "primer library prefix")->required();
    est->add_option("--indexes", indexes, "index table FASTA")->required();
    est->add_option("--partition-bytes", partition_bytes, "partition size override");
    est->add_option("--out", out_prefix, "report prefix (.csv/.json)")->required();

    auto* pcr = app.add_subcommand("simulate-pcr", "run the PCR competition model");
    pcr->add_option("--out", out_prefix, "trace CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        common.load();
        if (gen->parsed())
            return cmd_gen_primers(common, seed, count, max_attempts, out_prefix);
        if (gidx->parsed())
            return cmd_gen_indexes(common, primers, count, index_len, out_prefix);
        if (enc->parsed())
            return cmd_encode(common, scheme, in_path, primers, indexes, out_prefix);
        if (dec->parsed()) return cmd_decode(in_path, primers, indexes, out_prefix);
        if (scn->parsed()) return cmd_scan(common, primers, payloads, out_prefix);
        if (est->parsed())
            return cmd_estimate(common, corpus, scheme, primers, indexes,
                                partition_bytes, out_prefix);
        if (pcr->parsed()) return cmd_simulate_pcr(common, out_prefix);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CodecError& e) {
        std::cerr << "corruption: " << e.what() << "\n";
        return kExitCorrupt;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
