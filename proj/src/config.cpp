#include "dnastore/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace dna {
namespace {

std::string fmt_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("config: double format");
    return std::string(buf, p);
}

double parse_double(const std::string& s) {
    double v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw std::runtime_error("config: bad number '" + s + "'");
    return v;
}

std::int64_t parse_int(const std::string& s) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw std::runtime_error("config: bad integer '" + s + "'");
    return v;
}

std::uint64_t parse_uint(const std::string& s) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw std::runtime_error("config: bad integer '" + s + "'");
    return v;
}

std::string competitors_to_string(const std::vector<PcrCompetitor>& cs) {
    std::string out;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (i) out += ';';
        out += fmt_double(cs[i].initial_count) + ":" + fmt_double(cs[i].binding_efficiency);
    }
    return out;
}

std::vector<PcrCompetitor> competitors_from_string(const std::string& s) {
    std::vector<PcrCompetitor> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("config: bad competitor '" + item + "'");
        out.push_back({parse_double(item.substr(0, colon)),
                       parse_double(item.substr(colon + 1))});
    }
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

}  // namespace

ToolConfig ToolConfig::parse(const std::string& text) {
    ToolConfig c;
    std::map<std::string, std::function<void(const std::string&)>> setters;
    auto I = [](int& f) { return [&f](const std::string& v) { f = static_cast<int>(parse_int(v)); }; };
    auto I64 = [](std::int64_t& f) { return [&f](const std::string& v) { f = parse_int(v); }; };
    auto U64 = [](std::uint64_t& f) { return [&f](const std::string& v) { f = parse_uint(v); }; };
    auto D = [](double& f) { return [&f](const std::string& v) { f = parse_double(v); }; };
    auto SZ = [](std::size_t& f) {
        return [&f](const std::string& v) { f = static_cast<std::size_t>(parse_int(v)); };
    };
    auto B = [](bool& f) {
        return [&f](const std::string& v) {
            if (v == "true") f = true;
            else if (v == "false") f = false;
            else throw std::runtime_error("config: bad bool '" + v + "'");
        };
    };

    setters["primer_length"] = I(c.primer.primer_length);
    setters["primer_gc_min"] = D(c.primer.gc_min);
    setters["primer_gc_max"] = D(c.primer.gc_max);
    setters["primer_tm_min"] = D(c.primer.tm_min);
    setters["primer_tm_max"] = D(c.primer.tm_max);
    setters["primer_max_homopolymer"] = I(c.primer.max_homopolymer);
    setters["primer_min_hamming"] = I(c.primer.min_hamming);
    setters["primer_max_inter_complement"] = I(c.primer.max_inter_complement);
    setters["primer_max_intra_complement"] = I(c.primer.max_intra_complement);
    setters["tube_parallel_factor"] = I64(c.tube.parallel_factor);
    setters["tube_payload_len_nt"] = I(c.tube.payload_len_nt);
    setters["tube_index_len_nt"] = I(c.tube.index_len_nt);
    setters["tube_primer_len_nt"] = I(c.tube.primer_len_nt);
    setters["tube_ecc_data_bytes"] = I(c.tube.ecc_data_bytes);
    setters["tube_ecc_code_bytes"] = I(c.tube.ecc_code_bytes);
    setters["tube_partition_data_size"] = I64(c.tube.partition_data_size);
    setters["collision_min_align_len"] = I(c.collision.min_align_len);
    setters["collision_max_errors"] = I(c.collision.max_errors);
    setters["collision_check_revcomp"] = B(c.collision.check_reverse_complement);
    setters["fountain_c"] = D(c.fountain.soliton_c);
    setters["fountain_delta"] = D(c.fountain.soliton_delta);
    setters["fountain_redundancy"] = D(c.fountain.redundancy);
    setters["fountain_segment_size"] = SZ(c.fountain.segment_size);
    setters["fountain_gc_min"] = D(c.fountain.gc_min);
    setters["fountain_gc_max"] = D(c.fountain.gc_max);
    setters["fountain_max_homopolymer"] = I(c.fountain.max_homopolymer);
    setters["pcr_cycles"] = I(c.pcr.cycles);
    setters["pcr_reagent_budget"] = D(c.pcr.reagent_budget);
    setters["pcr_target_count_0"] = D(c.pcr.target_count_0);
    setters["pcr_competitors"] = [&c](const std::string& v) {
        c.pcr.competitors = competitors_from_string(v);
    };
    setters["pcr_efficiency_jitter"] = D(c.pcr.efficiency_jitter);
    setters["pcr_jitter_seed"] = U64(c.pcr.jitter_seed);
    setters["scheme"] = [&c](const std::string& v) { c.scheme = scheme_from_name(v); };
    setters["primer_seed"] = U64(c.primer_seed);
    setters["fountain_seed"] = U64(c.fountain_seed);

    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end())
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": unknown key '" + key + "'");
        it->second(value);
    }
    return c;
}

ToolConfig ToolConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string ToolConfig::serialize() const {
    std::ostringstream out;
    out << "primer_length = " << primer.primer_length << '\n';
    out << "primer_gc_min = " << fmt_double(primer.gc_min) << '\n';
    out << "primer_gc_max = " << fmt_double(primer.gc_max) << '\n';
    out << "primer_tm_min = " << fmt_double(primer.tm_min) << '\n';
    out << "primer_tm_max = " << fmt_double(primer.tm_max) << '\n';
    out << "primer_max_homopolymer = " << primer.max_homopolymer << '\n';
    out << "primer_min_hamming = " << primer.min_hamming << '\n';
    out << "primer_max_inter_complement = " << primer.max_inter_complement << '\n';
    out << "primer_max_intra_complement = " << primer.max_intra_complement << '\n';
    out << "tube_parallel_factor = " << tube.parallel_factor << '\n';
    out << "tube_payload_len_nt = " << tube.payload_len_nt << '\n';
    out << "tube_index_len_nt = " << tube.index_len_nt << '\n';
    out << "tube_primer_len_nt = " << tube.primer_len_nt << '\n';
    out << "tube_ecc_data_bytes = " << tube.ecc_data_bytes << '\n';
    out << "tube_ecc_code_bytes = " << tube.ecc_code_bytes << '\n';
    out << "tube_partition_data_size = " << tube.partition_data_size << '\n';
    out << "collision_min_align_len = " << collision.min_align_len << '\n';
    out << "collision_max_errors = " << collision.max_errors << '\n';
    out << "collision_check_revcomp = "
        << (collision.check_reverse_complement ? "true" : "false") << '\n';
    out << "fountain_c = " << fmt_double(fountain.soliton_c) << '\n';
    out << "fountain_delta = " << fmt_double(fountain.soliton_delta) << '\n';
    out << "fountain_redundancy = " << fmt_double(fountain.redundancy) << '\n';
    out << "fountain_segment_size = " << fountain.segment_size << '\n';
    out << "fountain_gc_min = " << fmt_double(fountain.gc_min) << '\n';
    out << "fountain_gc_max = " << fmt_double(fountain.gc_max) << '\n';
    out << "fountain_max_homopolymer = " << fountain.max_homopolymer << '\n';
    out << "pcr_cycles = " << pcr.cycles << '\n';
    out << "pcr_reagent_budget = " << fmt_double(pcr.reagent_budget) << '\n';
    out << "pcr_target_count_0 = " << fmt_double(pcr.target_count_0) << '\n';
    out << "pcr_competitors = " << competitors_to_string(pcr.competitors) << '\n';
    out << "pcr_efficiency_jitter = " << fmt_double(pcr.efficiency_jitter) << '\n';
    out << "pcr_jitter_seed = " << pcr.jitter_seed << '\n';
    out << "scheme = " << scheme_name(scheme) << '\n';
    out << "primer_seed = " << primer_seed << '\n';
    out << "fountain_seed = " << fountain_seed << '\n';
    return out.str();
}

}  // namespace dna
