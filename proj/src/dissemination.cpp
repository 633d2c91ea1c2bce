#include "rumorsim/dissemination.hpp"

#include <stdexcept>

namespace rumorsim {

std::string_view to_string(AcceptMode mode) {
    return mode == AcceptMode::total ? "total" : "considered";
}

std::optional<AcceptMode> parse_accept_mode(std::string_view text) {
    if (text == "total") return AcceptMode::total;
    if (text == "considered") return AcceptMode::considered;
    return std::nullopt;
}

std::string_view to_string(OwnVersionPolicy policy) {
    return policy == OwnVersionPolicy::discard ? "discard" : "reinsert";
}

std::optional<OwnVersionPolicy> parse_own_version_policy(std::string_view text) {
    if (text == "discard") return OwnVersionPolicy::discard;
    if (text == "reinsert") return OwnVersionPolicy::reinsert;
    return std::nullopt;
}

std::string_view to_string(TurnAction action) {
    switch (action) {
        case TurnAction::skipped_empty_box: return "skipped_empty_box";
        case TurnAction::rejected: return "rejected";
        case TurnAction::spread: return "spread";
    }
    return "?";
}

Rumor merge_box(const RumorBox& box) {
    if (box.empty()) throw std::invalid_argument("merge_box: empty box");
    const std::size_t n = box.entries().front().rumor.size();

    double total = 0.0;
    for (const auto& e : box.entries()) total += e.weight;
    if (total <= 0.0) return Rumor::zeros(n);

    Rumor out = Rumor::zeros(n);
    for (std::size_t j = 0; j < n; ++j) {
        double ones = 0.0;
        for (const auto& e : box.entries())
            if (e.rumor.bit(j)) ones += e.weight;
        // floor(1/2 + ones/total) == 1  <=>  2*ones >= total
        out.set(j, 2.0 * ones >= total);
    }
    return out;
}

Classification classify(const Rumor& rumor, const Desire& desire) {
    for (PropIndex k : desire.gamma_plus)
        if (k >= rumor.size()) throw ConfigError("gamma_plus", "index exceeds rumor length");
    for (PropIndex k : desire.gamma_minus)
        if (k >= rumor.size()) throw ConfigError("gamma_minus", "index exceeds rumor length");
    Classification c;
    for (PropIndex k = 0; k < rumor.size(); ++k) {
        const bool positive = desire.gamma_plus.count(k) != 0;
        const bool negative = desire.gamma_minus.count(k) != 0;
        if (!positive && !negative) {
            c.inconsiderable.insert(k);
        } else if (rumor.bit(k) == positive) {
            c.accepted.insert(k);
        } else {
            c.unaccepted.insert(k);
        }
    }
    return c;
}

AcceptDecision accept(const Rumor& rumor, const Agent& agent, std::size_t space_size, double attractiveness,
                      AcceptMode mode) {
    if (rumor.size() != space_size) throw ConfigError("rumor", "length does not match proposition count");
    const auto c = classify(rumor, agent.desire);
    const double accepted = static_cast<double>(c.accepted.size());
    AcceptDecision d;
    if (mode == AcceptMode::total) {
        d.ratio = accepted / static_cast<double>(space_size);
        d.accepted = d.ratio > agent.accept_threshold;
    } else {
        const double considered = accepted + static_cast<double>(c.unaccepted.size());
        d.ratio = considered == 0.0 ? 1.0 : accepted / considered;
        d.accepted = attractiveness + d.ratio > agent.accept_threshold;
    }
    return d;
}

PropIndex select_mutation_target(const PropositionSet& unaccepted, const PropositionSpace& space,
                                 RandomSource& rng) {
    if (unaccepted.empty()) throw std::invalid_argument("select_mutation_target: empty candidate set");

    double total = 0.0;
    for (PropIndex k : unaccepted) total += space.priority(k);
    if (total <= 0.0) {
        auto it = unaccepted.begin();
        std::advance(it, static_cast<std::ptrdiff_t>(rng.uniform_index(unaccepted.size())));
        return *it;
    }

    const double spin = rng.uniform01() * total;
    double acc = 0.0;
    PropIndex last_positive = *unaccepted.begin();
    for (PropIndex k : unaccepted) {
        const double w = space.priority(k);
        if (w <= 0.0) continue;
        last_positive = k;
        acc += w;
        if (spin < acc) return k;
    }
    // spin landed on the rounding sliver at the top of the wheel
    return last_positive;
}

MutationResult mutate(const Rumor& accepted_rumor, const Agent& agent, const PropositionSpace& space,
                      RandomSource& rng) {
    MutationResult result{accepted_rumor, std::nullopt};
    const auto unaccepted = classify(accepted_rumor, agent.desire).unaccepted;
    if (unaccepted.empty()) return result;

    const PropIndex target = select_mutation_target(unaccepted, space, rng);
    if (rng.uniform01() < 1.0 - agent.veracity) {
        result.rumor.flip(target);
        result.mutated = target;
    }
    return result;
}

void hear(Agent& receiver, const Rumor& rumor, int spreader_id, double trust) {
    receiver.box.put({rumor, spreader_id, trust});
}

TurnOutcome take_turn(Colony& colony, std::size_t agent_index, const TurnOptions& options, RandomSource& rng) {
    Agent& self = colony.agents.at(agent_index);
    TurnOutcome outcome;
    outcome.agent_id = self.id;
    if (self.box.empty()) return outcome;

    const Rumor merged = merge_box(self.box);
    const auto decision = accept(merged, self, colony.space.size(), colony.attractiveness, options.accept_mode);
    outcome.accept_ratio = decision.ratio;
    if (!decision.accepted) {
        outcome.action = TurnAction::rejected;
        return outcome;
    }

    auto [promoted, mutated] = mutate(merged, self, colony.space, rng);
    self.last_promoted = promoted;
    for (std::size_t r = 0; r < colony.agents.size(); ++r) {
        if (r == agent_index) continue;
        hear(colony.agents[r], promoted, self.id, colony.trust.at(r, agent_index));
    }
    self.box.clear();
    if (options.own_version == OwnVersionPolicy::reinsert) self.box.put({promoted, self.id, 1.0});

    outcome.action = TurnAction::spread;
    outcome.promoted = std::move(promoted);
    outcome.mutated_index = mutated;
    return outcome;
}

}  // namespace rumorsim
