#pragma once

#include <cstdint>

#include "rumorsim/dissemination.hpp"
#include "rumorsim/metrics.hpp"
#include "rumorsim/model.hpp"
#include "rumorsim/random.hpp"

namespace rumorsim {

struct RunConfig {
    std::size_t generations = 5000;
    std::uint64_t seed = 0;
    AcceptMode accept_mode = AcceptMode::considered;
    /// 0 selects the default of 20 generations per agent.
    std::size_t stability_window = 0;
    OwnVersionPolicy own_version = OwnVersionPolicy::discard;
    InstabilityReference instability_reference = InstabilityReference::merged;

    std::size_t window_for(std::size_t agent_count) const {
        return stability_window != 0 ? stability_window : 20 * agent_count;
    }
    TurnOptions turn_options() const { return {accept_mode, own_version}; }

    bool operator==(const RunConfig&) const = default;
};

/// Seeds every observer's box with the actual event at weight 1.
void seed_observers(Colony& colony);

/// One generation: a uniformly drawn agent takes its turn, then the colony is measured.
GenerationRecord step(Colony& colony, const RunConfig& config, RandomSource& rng, std::size_t generation);

/// Simulates from the observers' first sighting until convergence or the generation cap.
/// The colony is taken by value; the caller's copy is untouched.
Trace run(Colony colony, const RunConfig& config);

/// Same as run() but leaves the final colony state in `colony`.
Trace run_in_place(Colony& colony, const RunConfig& config);

}  // namespace rumorsim
