#include "dnastore/pcr.hpp"

#include <fstream>
#include <stdexcept>

#include "dnastore/rng.hpp"

namespace dna {

PcrTrace simulate(const PcrConfig& config) {
    if (config.cycles < 0 || config.reagent_budget < 0 || config.target_count_0 < 0)
        throw std::domain_error("pcr: negative config value");
    for (const auto& c : config.competitors)
        if (c.initial_count < 0 || c.binding_efficiency < 0 || c.binding_efficiency > 1)
            throw std::domain_error("pcr: competitor out of range");

    PcrTrace trace;
    double target = config.target_count_0;
    std::vector<double> comp;
    for (const auto& c : config.competitors) comp.push_back(c.initial_count);
    double budget = config.reagent_budget;
    Xorshift64Star rng(config.jitter_seed);

    PcrCycleState st{0, target, comp, budget};
    trace.cycles.push_back(st);

    for (int cycle = 1; cycle <= config.cycles; ++cycle) {
        double demand = target;
        std::vector<double> eff(config.competitors.size());
        for (std::size_t i = 0; i < comp.size(); ++i) {
            eff[i] = config.competitors[i].binding_efficiency;
            if (config.efficiency_jitter > 0) {
                const double u = 2.0 * rng.next_unit() - 1.0;
                eff[i] = std::min(1.0, std::max(0.0, eff[i] * (1.0 + config.efficiency_jitter * u)));
            }
            demand += eff[i] * comp[i];
        }
        double scale = 1.0;
        if (demand > budget) scale = (demand > 0) ? budget / demand : 0.0;
        const double consumed = demand * scale;
        target += scale * target;
        for (std::size_t i = 0; i < comp.size(); ++i) comp[i] += scale * eff[i] * comp[i];
        budget -= consumed;
        trace.total_consumed += consumed;
        trace.cycles.push_back({cycle, target, comp, budget});
    }

    double total = target;
    for (double c : comp) total += c;
    trace.final_target_fraction = total > 0 ? target / total : 0.0;
    return trace;
}

void write_trace_csv(const PcrTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "cycle,target";
    if (!trace.cycles.empty())
        for (std::size_t i = 0; i < trace.cycles[0].competitors.size(); ++i)
            out << ",competitor_" << i;
    out << ",budget\n";
    for (const auto& st : trace.cycles) {
        out << st.cycle << ',' << st.target;
        for (double c : st.competitors) out << ',' << c;
        out << ',' << st.budget << '\n';
    }
}

}  // namespace dna
