#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dnastore/seq.hpp"

namespace dna {

struct FastaRecord {
    std::string id;
    DnaSeq seq;
};

struct FastaParseError : std::runtime_error {
    FastaParseError(const std::string& msg, std::size_t line)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ")"),
          line_number(line) {}
    std::size_t line_number;
};

std::vector<FastaRecord> read_fasta(std::istream& in);
std::vector<FastaRecord> read_fasta_file(const std::string& path);

void write_fasta(std::ostream& out, const std::vector<FastaRecord>& records,
                 std::size_t line_width = 70);
void write_fasta_file(const std::string& path,
                      const std::vector<FastaRecord>& records,
                      std::size_t line_width = 70);

}  // namespace dna
