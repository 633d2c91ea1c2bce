#include <array>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "rumorsim/scenario.hpp"

namespace rumorsim {

namespace {

constexpr std::array<double, 23> kPriorities = {0.8, 0.1, 0.7, 0.3, 0.4, 0.4, 0.6, 0.6, 0.3, 0.2, 0.3, 0.6,
                                                0.2, 0.8, 0.5, 0.5, 0.1, 0.9, 1.0, 0.4, 0.5, 1.0, 0.2};
constexpr const char* kActualEvent = "11101001101110101001010";
constexpr double kVeracity = 0.5;
constexpr double kThreshold = 0.5;

// Desire rows use 1-based proposition numbers, as in the published tables.
struct DesireRow {
    std::vector<int> plus;
    std::vector<int> minus;
};

using Trust = std::vector<std::vector<double>>;

PropositionSpace example_space() {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= kPriorities.size(); ++i) names.push_back("p" + std::to_string(i));
    return {std::move(names), std::vector<double>(kPriorities.begin(), kPriorities.end())};
}

PropositionSet to_set(const std::vector<int>& one_based) {
    PropositionSet s;
    for (int p : one_based) s.insert(static_cast<PropIndex>(p - 1));
    return s;
}

Trust uniform_trust(std::size_t n, double off_diagonal) {
    return TrustMatrix(n, off_diagonal).rows();
}

const Trust& nine_agent_trust() {
    static const Trust t = {
        {1, 0.3, 0.3, 0.37, 0.3, 0.32, 0.5, 0.58, 0.33},
        {0.3, 1, 0.3, 0.35, 0.36, 0.4, 0.52, 0.79, 0.32},
        {0.3, 0.3, 1, 0.38, 0.36, 0.31, 0.36, 0.58, 0.34},
        {0.37, 0.35, 0.38, 1, 0.37, 0.32, 0.39, 0.63, 0.34},
        {0.3, 0.36, 0.36, 0.37, 1, 0.36, 0.32, 0.53, 0.35},
        {0.32, 0.4, 0.31, 0.32, 0.36, 1, 0.31, 0.39, 0.3},
        {0.5, 0.52, 0.36, 0.39, 0.32, 0.31, 1, 0.41, 0.33},
        {0.58, 0.79, 0.58, 0.63, 0.53, 0.39, 0.41, 1, 0.57},
        {0.33, 0.32, 0.34, 0.34, 0.35, 0.3, 0.33, 0.57, 1},
    };
    return t;
}

const DesireRow kUniformDesire = {{1, 2, 3, 7, 9, 11, 13, 17}, {4, 6, 8, 14, 16, 20, 21, 23}};

const std::vector<DesireRow> kTwoCompatible = {
    {{1, 2, 3, 10, 11, 13, 17}, {4, 6, 8, 14, 20, 21, 23}},
    {{1, 3, 7, 9, 11, 13, 17}, {4, 5, 8, 14, 16, 20, 22, 23}},
};

const std::vector<DesireRow> kTwoConflicting = {
    {{2, 5, 10, 11, 13, 17, 18}, {4, 6, 8, 19, 20, 23}},
    {{1, 3, 7, 9, 12, 13, 15}, {5, 14, 16, 18, 21, 22}},
};

const std::vector<DesireRow> kNineCompatible = {
    {{1, 2, 3, 9, 11, 13, 17}, {6, 14, 16, 21, 23}},
    {{4, 12, 22}, {5, 6, 14, 21}},
    {{1, 3, 4, 9, 13, 17}, {6, 10, 14, 18, 21}},
    {{1, 2, 3, 4, 9, 12, 13}, {5, 6, 14, 16, 18, 23}},
    {{1, 2, 3, 4, 12, 13, 17}, {5, 6, 14, 18, 23}},
    {{4, 9, 12, 13, 17, 22}, {6, 14, 16, 19, 21}},
    {{2, 4, 13, 22}, {5, 6, 16}},
    {{3, 12, 13, 22}, {10, 18, 23}},
    {{1, 2, 4, 9, 12, 22}, {5, 6, 14, 19, 21}},
};

const std::vector<DesireRow> kNineConflicting = {
    {{1, 2, 3, 7, 9, 11, 13, 17}, {4, 6, 8, 14, 16, 20, 21, 23}},
    {{4, 12, 18, 22}, {5, 6, 7, 14, 20, 21}},
    {{1, 3, 4, 7, 9, 13, 17, 20, 23}, {6, 8, 10, 12, 14, 18, 21}},
    {{1, 2, 3, 4, 7, 9, 12, 13, 19}, {5, 6, 14, 18, 23}},
    {{1, 2, 3, 4, 7, 9, 12, 13, 19}, {5, 6, 14, 18, 23}},
    {{4, 9, 12, 13, 17, 22}, {6, 11, 14, 16, 19, 21}},
    {{2, 4, 13, 19, 21, 22}, {5, 6, 11, 16, 18}},
    {{3, 6, 12, 13, 22}, {7, 10, 18, 23}},
    {{1, 2, 4, 9, 12, 18, 22}, {5, 6, 8, 11, 14, 19, 21}},
};

const std::vector<DesireRow> kNineNearlyCompatible = {
    {{1, 2, 3, 7, 9, 11, 13, 17}, {6, 8, 14, 16, 20, 21, 23}},
    {{4, 12, 22}, {5, 6, 14, 21}},
    {{1, 3, 4, 9, 13, 17}, {6, 8, 10, 14, 18, 21}},
    {{1, 2, 3, 4, 9, 12, 13}, {5, 6, 14, 15, 18, 23}},
    {{1, 2, 3, 4, 12, 13, 17}, {5, 6, 7, 8, 14, 18, 23}},
    {{4, 9, 12, 13, 17, 22}, {6, 14, 16, 19, 21}},
    {{2, 4, 13, 22}, {5, 6, 16}},
    {{3, 12, 13, 22}, {10, 18, 23}},
    {{1, 2, 4, 9, 12, 18, 22}, {5, 6, 14, 19, 21}},
};

constexpr const char* kThresholdNote =
    "accept_threshold=0.5 with accept_mode=considered is a calibration choice; the published example gives no threshold.";

Scenario make(const std::vector<DesireRow>& desires, const Trust& trust, std::initializer_list<int> observers,
              std::optional<double> published_h, std::string extra_note = {}) {
    Scenario s;
    s.colony.space = example_space();
    s.colony.initial_observation = Rumor::parse(kActualEvent);
    for (std::size_t i = 0; i < desires.size(); ++i) {
        Agent ag;
        ag.id = static_cast<int>(i + 1);
        ag.desire = {to_set(desires[i].plus), to_set(desires[i].minus)};
        ag.veracity = kVeracity;
        ag.accept_threshold = kThreshold;
        s.colony.agents.push_back(std::move(ag));
    }
    s.colony.trust = TrustMatrix(trust);
    s.colony.observers = observers;
    s.published_homogeneity = published_h;
    s.note = kThresholdNote;
    if (!extra_note.empty()) s.note += " " + extra_note;
    s.report = validate_colony(s.colony);
    return s;
}

}  // namespace

Scenario builtin_example(int n) {
    switch (n) {
        case 1: return make(std::vector<DesireRow>(9, kUniformDesire), uniform_trust(9, 1.0), {9}, 1.0);
        case 2:
            return make(std::vector<DesireRow>(9, kUniformDesire), uniform_trust(9, 0.5), {9}, 1.0,
                        "Self-trust is kept at 1; only the off-diagonal pairs are 0.5.");
        case 3: return make(kTwoCompatible, {{1, 0.6}, {0.6, 1}}, {1}, 1.0);
        case 4: return make(kTwoConflicting, uniform_trust(2, 1.0), {1}, 0.3734);
        case 5: return make(kNineCompatible, nine_agent_trust(), {9}, std::nullopt,
                            "The trust table breaks the trust-triangle assumption, e.g. (1,2,8).");
        case 6:
            return make(kNineConflicting, nine_agent_trust(), {9}, 1.4e-7,
                        "The published homogeneity 1.4e-7 does not follow from these desires and trusts; "
                        "the computed value is about 4.72e-5.");
        case 7:
            return make(kNineNearlyCompatible, nine_agent_trust(), {9}, 1.0,
                        "The published homogeneity is 1, but agents 1 and 5 conflict on p7 and agent 9 "
                        "conflicts with agents 3, 4, 5 and 8 on p18, so the computed value is below 1.");
        default: throw ConfigError("example", "example out of range (expected 1.." +
                                                  std::to_string(kBuiltinExampleCount) + ")");
    }
}

}  // namespace rumorsim
