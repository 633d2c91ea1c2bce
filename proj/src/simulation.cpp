#include "rumorsim/simulation.hpp"

#include <stdexcept>

namespace rumorsim {

void seed_observers(Colony& colony) {
    for (auto& ag : colony.agents) {
        ag.box.clear();
        ag.last_promoted.reset();
        if (colony.observers.count(ag.id)) ag.box.put({colony.initial_observation, ag.id, 1.0});
    }
}

GenerationRecord step(Colony& colony, const RunConfig& config, RandomSource& rng, std::size_t generation) {
    const std::size_t active = rng.uniform_index(colony.agents.size());
    GenerationRecord rec;
    rec.generation = generation;
    rec.outcome = take_turn(colony, active, config.turn_options(), rng);
    rec.instability = social_instability(colony, config.instability_reference);
    rec.consensus = has_consensus(colony);
    return rec;
}

Trace run_in_place(Colony& colony, const RunConfig& config) {
    if (config.generations == 0) throw std::invalid_argument("run: generations must be at least 1");
    require_valid(colony);

    Trace trace;
    trace.seed = config.seed;
    trace.accept_mode = config.accept_mode;
    trace.stability_window = config.window_for(colony.agents.size());
    trace.own_version = config.own_version;
    trace.instability_reference = config.instability_reference;
    trace.homogeneity = homogeneity(colony);
    trace.records.reserve(config.generations);

    seed_observers(colony);
    RandomSource rng(config.seed);
    std::size_t zero_run = 0;
    for (std::size_t t = 0; t < config.generations; ++t) {
        trace.records.push_back(step(colony, config, rng, t));
        // same scan as detect_convergence, done incrementally so the run can stop
        zero_run = trace.records.back().instability == 0.0 ? zero_run + 1 : 0;
        if (zero_run == trace.stability_window) {
            trace.converged_at = t + 1 - trace.stability_window;
            break;
        }
    }
    return trace;
}

Trace run(Colony colony, const RunConfig& config) { return run_in_place(colony, config); }

}  // namespace rumorsim
