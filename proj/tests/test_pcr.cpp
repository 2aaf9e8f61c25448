#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "dnastore/pcr.hpp"

using namespace dna;

TEST_CASE("doubling law without competitors") {
    PcrConfig cfg;
    cfg.cycles = 30;
    cfg.target_count_0 = 3.0;
    cfg.reagent_budget = 1e12;  // ample
    const PcrTrace trace = simulate(cfg);
    REQUIRE(trace.cycles.size() == 31);
    CHECK(trace.cycles.back().target == doctest::Approx(3.0 * std::pow(2.0, 30)));
    CHECK(trace.final_target_fraction == doctest::Approx(1.0));
}

TEST_CASE("zero cycles returns the initial state") {
    PcrConfig cfg;
    cfg.cycles = 0;
    cfg.target_count_0 = 5.0;
    cfg.reagent_budget = 100.0;
    cfg.competitors = {{2.0, 0.5}};
    const PcrTrace trace = simulate(cfg);
    REQUIRE(trace.cycles.size() == 1);
    CHECK(trace.cycles[0].target == doctest::Approx(5.0));
    CHECK(trace.cycles[0].competitors[0] == doctest::Approx(2.0));
    CHECK(trace.cycles[0].budget == doctest::Approx(100.0));
    CHECK(trace.total_consumed == doctest::Approx(0.0));
}

TEST_CASE("symmetric competitor with efficiency 1 caps the target fraction at half") {
    PcrConfig cfg;
    cfg.cycles = 40;
    cfg.target_count_0 = 10.0;
    cfg.competitors = {{10.0, 1.0}};
    cfg.reagent_budget = 5000.0;
    const PcrTrace trace = simulate(cfg);
    CHECK(trace.final_target_fraction <= 0.5 + 1e-12);
    CHECK(trace.cycles.back().budget == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("budget is conserved and non-increasing") {
    PcrConfig cfg;
    cfg.cycles = 25;
    cfg.target_count_0 = 1.0;
    cfg.competitors = {{5.0, 0.7}, {3.0, 0.2}};
    cfg.reagent_budget = 10000.0;
    const PcrTrace trace = simulate(cfg);
    CHECK(trace.total_consumed <= cfg.reagent_budget + 1e-9);
    for (std::size_t i = 1; i < trace.cycles.size(); ++i) {
        CHECK(trace.cycles[i].budget <= trace.cycles[i - 1].budget + 1e-12);
        CHECK(trace.cycles[i].target >= trace.cycles[i - 1].target - 1e-12);
        for (std::size_t c = 0; c < trace.cycles[i].competitors.size(); ++c)
            CHECK(trace.cycles[i].competitors[c] >=
                  trace.cycles[i - 1].competitors[c] - 1e-12);
    }
    const double spent = trace.cycles.front().budget - trace.cycles.back().budget;
    CHECK(trace.total_consumed == doctest::Approx(spent));
}

TEST_CASE("monotone harm over a parameter sweep") {
    const double counts[] = {0.0, 2.0, 8.0, 32.0, 128.0};
    const double effs[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    double prev_fraction = 2.0;
    for (double count : counts) {
        PcrConfig cfg;
        cfg.cycles = 20;
        cfg.target_count_0 = 4.0;
        cfg.reagent_budget = 1e7;
        cfg.competitors = {{count, 0.6}};
        const double f = simulate(cfg).final_target_fraction;
        CHECK(f <= prev_fraction + 1e-12);
        prev_fraction = f;
    }
    prev_fraction = 2.0;
    for (double eff : effs) {
        PcrConfig cfg;
        cfg.cycles = 20;
        cfg.target_count_0 = 4.0;
        cfg.reagent_budget = 1e7;
        cfg.competitors = {{16.0, eff}};
        const double f = simulate(cfg).final_target_fraction;
        CHECK(f <= prev_fraction + 1e-12);
        prev_fraction = f;
    }
}

TEST_CASE("cycles to reach a threshold follow the doubling rule exactly") {
    PcrConfig cfg;
    cfg.cycles = 40;
    cfg.target_count_0 = 7.0;
    cfg.reagent_budget = 1e15;
    const PcrTrace trace = simulate(cfg);
    const double threshold = 1e9;
    const int expect = static_cast<int>(std::ceil(std::log2(threshold / 7.0)));
    int reached = -1;
    for (const auto& st : trace.cycles)
        if (st.target >= threshold) {
            reached = st.cycle;
            break;
        }
    CHECK(reached == expect);
}

TEST_CASE("trace exports csv") {
    PcrConfig cfg;
    cfg.cycles = 2;
    cfg.target_count_0 = 1.0;
    cfg.reagent_budget = 100.0;
    cfg.competitors = {{1.0, 0.5}};
    const std::string path = "/tmp/dnastore_pcr.csv";
    write_trace_csv(simulate(cfg), path);
    std::FILE* f = std::fopen(path.c_str(), "r");
    REQUIRE(f != nullptr);
    char line[256];
    REQUIRE(std::fgets(line, sizeof line, f) != nullptr);
    CHECK(std::string(line) == "cycle,target,competitor_0,budget\n");
    std::fclose(f);
    std::remove(path.c_str());
}
