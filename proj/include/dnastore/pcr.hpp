#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dna {

struct PcrCompetitor {
    double initial_count = 0.0;
    double binding_efficiency = 0.0;  // in [0, 1]
};

struct PcrConfig {
    int cycles = 30;
    double reagent_budget = 0.0;   // molecule count; complementary primers
                                   // and free bases abstracted as one pool
    double target_count_0 = 1.0;
    std::vector<PcrCompetitor> competitors;
    // optional seeded per-cycle efficiency jitter for exploratory runs;
    // 0 disables it and keeps the recurrence exact
    double efficiency_jitter = 0.0;
    std::uint64_t jitter_seed = 0;
};

struct PcrCycleState {
    int cycle = 0;
    double target = 0.0;
    std::vector<double> competitors;
    double budget = 0.0;
};

struct PcrTrace {
    std::vector<PcrCycleState> cycles;  // cycles[0] is the initial state
    double final_target_fraction = 0.0;
    double total_consumed = 0.0;
};

// Per cycle: demand = target + sum(eff_i * comp_i). With enough budget the
// target doubles and each competitor grows by (1 + eff_i); otherwise growth
// scales by budget/demand. Deterministic when efficiency_jitter is 0.
PcrTrace simulate(const PcrConfig& config);

// cycle,target,competitor_*,budget rows.
void write_trace_csv(const PcrTrace& trace, const std::string& path);

}  // namespace dna
