#include <doctest.h>

#include <sstream>

#include "dnastore/fasta.hpp"

using namespace dna;

TEST_CASE("fasta read basic records") {
    std::istringstream in(">a\nACGT\n>b desc\nAC\nGT\n\n>empty\n");
    const auto recs = read_fasta(in);
    REQUIRE(recs.size() == 3);
    CHECK(recs[0].id == "a");
    CHECK(recs[0].seq.to_string() == "ACGT");
    CHECK(recs[1].id == "b desc");
    CHECK(recs[1].seq.to_string() == "ACGT");
    CHECK(recs[2].id == "empty");
    CHECK(recs[2].seq.empty());
}

TEST_CASE("fasta rejects bad symbols with line numbers") {
    std::istringstream in(">a\nACGT\nACGN\n");
    try {
        read_fasta(in);
        FAIL("expected parse error");
    } catch (const FastaParseError& e) {
        CHECK(e.line_number == 3);
    }
    std::istringstream lower(">a\nacgt\n");
    CHECK_THROWS_AS(read_fasta(lower), FastaParseError);
    std::istringstream headerless("ACGT\n");
    CHECK_THROWS_AS(read_fasta(headerless), FastaParseError);
}

TEST_CASE("fasta write/read round trip with wrapping") {
    std::vector<FastaRecord> recs;
    std::string long_seq;
    for (int i = 0; i < 200; ++i) long_seq += "ACGT";
    recs.push_back({"x", DnaSeq::from_string(long_seq)});
    recs.push_back({"y", DnaSeq::from_string("A")});
    std::ostringstream out;
    write_fasta(out, recs);
    std::istringstream in(out.str());
    const auto back = read_fasta(in);
    REQUIRE(back.size() == 2);
    CHECK(back[0].seq == recs[0].seq);
    CHECK(back[1].seq == recs[1].seq);
}
