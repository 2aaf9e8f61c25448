#pragma once

#include <cstdint>
#include <string>

#include "dnastore/capacity.hpp"
#include "dnastore/collision.hpp"
#include "dnastore/fountain.hpp"
#include "dnastore/pcr.hpp"
#include "dnastore/primer.hpp"

namespace dna {

// Flat key = value configuration; defaults mirror the standard tube setup.
// Unknown keys are an error so typos never silently fall back to defaults.
struct ToolConfig {
    PrimerRules primer;
    TubeParams tube;
    CollisionParams collision;
    FountainParams fountain;
    PcrConfig pcr;
    Scheme scheme = Scheme::Rotation;
    std::uint64_t primer_seed = 1;
    std::uint64_t fountain_seed = 1;

    static ToolConfig parse(const std::string& text);
    static ToolConfig parse_file(const std::string& path);
    // Canonical form: every key in fixed order; parse(serialize(c)) is a
    // byte-identical round trip.
    std::string serialize() const;
};

}  // namespace dna
