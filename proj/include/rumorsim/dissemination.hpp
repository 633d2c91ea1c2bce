#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "rumorsim/model.hpp"
#include "rumorsim/random.hpp"

namespace rumorsim {

/// Partition of P relative to one agent's desire.
struct Classification {
    PropositionSet accepted;
    PropositionSet unaccepted;
    PropositionSet inconsiderable;
};

enum class AcceptMode {
    /// accepted / |P| > threshold
    total,
    /// attractiveness + accepted / (accepted + unaccepted) > threshold
    considered,
};

std::string_view to_string(AcceptMode mode);
std::optional<AcceptMode> parse_accept_mode(std::string_view text);

/// What the spreader keeps in its own box after broadcasting.
enum class OwnVersionPolicy {
    /// Box is cleared; only versions heard afterwards are merged next turn.
    discard,
    /// Box is cleared, then the promoted version is put back at self-trust 1.
    reinsert,
};

std::string_view to_string(OwnVersionPolicy policy);
std::optional<OwnVersionPolicy> parse_own_version_policy(std::string_view text);

struct TurnOptions {
    AcceptMode accept_mode = AcceptMode::considered;
    OwnVersionPolicy own_version = OwnVersionPolicy::discard;
};

enum class TurnAction { skipped_empty_box, rejected, spread };

std::string_view to_string(TurnAction action);

struct TurnOutcome {
    int agent_id = 0;
    TurnAction action = TurnAction::skipped_empty_box;
    std::optional<Rumor> promoted;
    std::optional<PropIndex> mutated_index;
    double accept_ratio = 0.0;

    bool operator==(const TurnOutcome&) const = default;
};

struct AcceptDecision {
    bool accepted = false;
    double ratio = 0.0;
};

struct MutationResult {
    Rumor rumor;
    std::optional<PropIndex> mutated;
};

/// Trust-weighted bitwise majority of the box. Ties go to 1; zero total
/// weight yields the all-zero rumor. Throws std::invalid_argument on an empty box.
Rumor merge_box(const RumorBox& box);

Classification classify(const Rumor& rumor, const Desire& desire);

AcceptDecision accept(const Rumor& rumor, const Agent& agent, std::size_t space_size, double attractiveness,
                      AcceptMode mode);

/// Roulette-wheel draw over the priorities of `unaccepted`. Falls back to a
/// uniform draw when every candidate has priority 0.
PropIndex select_mutation_target(const PropositionSet& unaccepted, const PropositionSpace& space,
                                 RandomSource& rng);

/// Picks one unaccepted proposition and flips it with probability 1 - veracity.
MutationResult mutate(const Rumor& accepted_rumor, const Agent& agent, const PropositionSpace& space,
                      RandomSource& rng);

/// Delivers a rumor. A bit-identical rumor already in the box keeps its first weight.
void hear(Agent& receiver, const Rumor& rumor, int spreader_id, double trust);

/// One agent's turn: merge, accept, mutate, broadcast to every other agent.
TurnOutcome take_turn(Colony& colony, std::size_t agent_index, const TurnOptions& options, RandomSource& rng);

}  // namespace rumorsim
