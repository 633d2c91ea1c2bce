#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rumorsim/dissemination.hpp"
#include "rumorsim/model.hpp"

namespace rumorsim {

/// Which version of the rumor an agent's instability is measured on.
enum class InstabilityReference {
    /// The merged view of the current box; last promoted version when the box is empty.
    merged,
    /// The last promoted version; merged box view before the first promotion.
    promoted,
};

std::string_view to_string(InstabilityReference ref);
std::optional<InstabilityReference> parse_instability_reference(std::string_view text);

struct GenerationRecord {
    std::size_t generation = 0;
    TurnOutcome outcome;
    double instability = 0.0;
    /// Every agent has promoted a version and all promoted versions are identical.
    bool consensus = false;

    bool operator==(const GenerationRecord&) const = default;
};

struct Trace {
    std::vector<GenerationRecord> records;
    double homogeneity = 1.0;
    std::optional<std::size_t> converged_at;

    std::uint64_t seed = 0;
    AcceptMode accept_mode = AcceptMode::considered;
    std::size_t stability_window = 0;
    OwnVersionPolicy own_version = OwnVersionPolicy::discard;
    InstabilityReference instability_reference = InstabilityReference::merged;

    std::vector<double> instabilities() const;
};

/// Propositions on which the two desires take opposite signs.
PropositionSet conflicts(const Agent& a, const Agent& b);

/// Priority-weighted Euclidean distance over conflicting propositions only.
double identical_distance(const Agent& a, const Agent& b, const PropositionSpace& space);

/// d(a,b) * trust(a,b) * (1 - veracity_a). Not symmetric.
double heterogeneity(const Colony& colony, std::size_t a, std::size_t b);

/// Pairwise heterogeneity H[a][b] over all ordered pairs.
std::vector<std::vector<double>> heterogeneity_matrix(const Colony& colony);

/// exp(-sum over ordered pairs of H[a][b]).
double homogeneity(const Colony& colony);

/// |unaccepted(reference)| * (1 - veracity); 0 if the agent holds nothing.
double individual_instability(const Agent& agent, InstabilityReference ref);

/// Mean individual instability over the colony.
double social_instability(const Colony& colony, InstabilityReference ref);

bool has_consensus(const Colony& colony);

/// Earliest m with instability exactly zero on [m, m + window). nullopt if none.
std::optional<std::size_t> detect_convergence(std::span<const double> instability, std::size_t window);

}  // namespace rumorsim
