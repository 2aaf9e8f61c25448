#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dnastore/codec.hpp"
#include "dnastore/rng.hpp"
#include "dnastore/seq.hpp"

namespace dna {

struct FountainParams {
    double soliton_c = 0.025;
    double soliton_delta = 0.001;
    double redundancy = 0.10;        // droplets emitted over segment count
    std::size_t segment_size = 45;   // bytes; 45B payload + 4B seed = 196 nt
    double gc_min = 0.45, gc_max = 0.55;
    int max_homopolymer = 3;
};

struct Droplet {
    std::uint32_t seed = 0;
    std::vector<std::uint8_t> payload;  // XOR of the selected segments

    // 16 nt of seed (2-bit direct map, most significant pair first) followed
    // by the payload bytes under the same map.
    DnaSeq to_dna() const;
    static Droplet from_dna(const DnaSeq& seq);  // throws CodecError
};

// Robust soliton degree distribution for N segments; cumulative form for
// inverse-CDF sampling.
class DegreeTable {
public:
    DegreeTable(std::size_t n, double c, double delta);
    std::size_t sample(double u) const;  // u in [0,1)
    std::size_t n() const { return cumulative_.size(); }

private:
    std::vector<double> cumulative_;
};

// Segment choice is fully determined by the 32-bit droplet seed: degree from
// one uniform draw, then distinct indices by rejection.
std::vector<std::uint32_t> droplet_segments(std::uint32_t seed,
                                            const DegreeTable& table);

// Emits ceil((1+redundancy)*N) droplets that pass the GC and homopolymer
// screen, drawing candidate droplet seeds from master_seed. All segments
// must have equal size.
std::vector<Droplet> fountain_encode(
    const std::vector<std::vector<std::uint8_t>>& segments,
    const FountainParams& params, std::uint64_t master_seed);

struct FountainDecodeResult {
    bool ok = false;
    std::vector<std::vector<std::uint8_t>> segments;
    std::vector<std::size_t> unresolved;  // segment indices left unknown
};

// Peeling first, then Gaussian elimination over the residual system.
FountainDecodeResult fountain_decode(const std::vector<Droplet>& droplets,
                                     std::size_t n_segments,
                                     const FountainParams& params);

}  // namespace dna
