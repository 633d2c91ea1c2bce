#include "rumorsim/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace rumorsim {

std::string_view to_string(InstabilityReference ref) {
    return ref == InstabilityReference::merged ? "merged" : "promoted";
}

std::optional<InstabilityReference> parse_instability_reference(std::string_view text) {
    if (text == "merged") return InstabilityReference::merged;
    if (text == "promoted") return InstabilityReference::promoted;
    return std::nullopt;
}

std::vector<double> Trace::instabilities() const {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(r.instability);
    return out;
}

PropositionSet conflicts(const Agent& a, const Agent& b) {
    PropositionSet out;
    for (PropIndex k : a.desire.gamma_plus)
        if (b.desire.gamma_minus.count(k)) out.insert(k);
    for (PropIndex k : a.desire.gamma_minus)
        if (b.desire.gamma_plus.count(k)) out.insert(k);
    return out;
}

double identical_distance(const Agent& a, const Agent& b, const PropositionSpace& space) {
    // floor(|M_a,k - M_b,k| / 2) is 1 exactly on opposite-sign entries
    double sum = 0.0;
    for (PropIndex k : conflicts(a, b)) {
        const double p = space.priority(k);
        sum += p * p;
    }
    return std::sqrt(sum);
}

double heterogeneity(const Colony& colony, std::size_t a, std::size_t b) {
    const Agent& first = colony.agents.at(a);
    return identical_distance(first, colony.agents.at(b), colony.space) * colony.trust.at(a, b) *
           (1.0 - first.veracity);
}

std::vector<std::vector<double>> heterogeneity_matrix(const Colony& colony) {
    const std::size_t n = colony.agents.size();
    std::vector<std::vector<double>> h(n, std::vector<double>(n, 0.0));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) h[a][b] = heterogeneity(colony, a, b);
    return h;
}

double homogeneity(const Colony& colony) {
    double total = 0.0;
    for (const auto& row : heterogeneity_matrix(colony))
        for (double v : row) total += v;
    return std::exp(-total);
}

double individual_instability(const Agent& agent, InstabilityReference ref) {
    std::optional<Rumor> reference;
    const bool prefer_box = ref == InstabilityReference::merged || !agent.last_promoted;
    if (prefer_box && !agent.box.empty()) {
        reference = merge_box(agent.box);
    } else if (agent.last_promoted) {
        reference = agent.last_promoted;
    }
    if (!reference) return 0.0;
    const auto unaccepted = classify(*reference, agent.desire).unaccepted.size();
    return static_cast<double>(unaccepted) * (1.0 - agent.veracity);
}

double social_instability(const Colony& colony, InstabilityReference ref) {
    if (colony.agents.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& ag : colony.agents) sum += individual_instability(ag, ref);
    return sum / static_cast<double>(colony.agents.size());
}

bool has_consensus(const Colony& colony) {
    if (colony.agents.empty() || !colony.agents.front().last_promoted) return false;
    const Rumor& first = *colony.agents.front().last_promoted;
    for (const auto& ag : colony.agents)
        if (!ag.last_promoted || *ag.last_promoted != first) return false;
    return true;
}

std::optional<std::size_t> detect_convergence(std::span<const double> instability, std::size_t window) {
    if (window == 0) throw std::invalid_argument("detect_convergence: window must be at least 1");
    std::size_t run = 0;
    for (std::size_t t = 0; t < instability.size(); ++t) {
        run = instability[t] == 0.0 ? run + 1 : 0;
        if (run == window) return t + 1 - window;
    }
    return std::nullopt;
}

}  // namespace rumorsim
