#include "dnastore/fasta.hpp"

#include <fstream>
#include <istream>
#include <ostream>

namespace dna {

std::vector<FastaRecord> read_fasta(std::istream& in) {
    std::vector<FastaRecord> records;
    std::string line;
    std::size_t lineno = 0;
    bool have_record = false;
    std::string id;
    std::vector<std::uint8_t> codes;

    auto flush = [&]() {
        if (have_record) records.push_back({std::move(id), DnaSeq(std::move(codes))});
        id.clear();
        codes.clear();
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '>') {
            flush();
            have_record = true;
            id = line.substr(1);
        } else {
            if (!have_record)
                throw FastaParseError("sequence data before first header", lineno);
            for (std::size_t i = 0; i < line.size(); ++i) {
                int c = char_to_base_code(line[i]);
                if (c < 0)
                    throw FastaParseError(
                        "invalid symbol '" + std::string(1, line[i]) + "'", lineno);
                codes.push_back(static_cast<std::uint8_t>(c));
            }
        }
    }
    flush();
    return records;
}

std::vector<FastaRecord> read_fasta_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_fasta(in);
}

void write_fasta(std::ostream& out, const std::vector<FastaRecord>& records,
                 std::size_t line_width) {
    for (const auto& r : records) {
        out << '>' << r.id << '\n';
        const std::string s = r.seq.to_string();
        for (std::size_t i = 0; i < s.size(); i += line_width)
            out << s.substr(i, line_width) << '\n';
        if (s.empty()) out << '\n';
    }
}

void write_fasta_file(const std::string& path,
                      const std::vector<FastaRecord>& records,
                      std::size_t line_width) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    write_fasta(out, records, line_width);
}

}  // namespace dna
