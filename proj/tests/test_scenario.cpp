#include <doctest.h>

#include <random>
#include <sstream>
#include <string>

#include "rumorsim/scenario.hpp"
#include "support/oracles.hpp"

using namespace rumorsim;

namespace {

const char* kMinimal = R"({
  "schema_version": 1,
  "propositions": [{"name": "rain", "priority": 0.5}, {"name": "wind", "priority": 1.0}],
  "initial_observation": "10",
  "agents": [
    {"id": 1, "gamma_plus": ["rain"], "gamma_minus": [], "veracity": 0.5},
    {"id": 2, "gamma_plus": [], "gamma_minus": ["wind"], "veracity": 0.8}
  ],
  "trust": [[1, 0.4], [0.7, 1]],
  "observers": [1]
})";

std::string replace(std::string text, const std::string& from, const std::string& to) {
    const auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, from.size(), to);
    return text;
}

std::string error_path(const std::string& text) {
    try {
        load_scenario_string(text);
    } catch (const ConfigError& e) {
        return e.path();
    }
    return "<no error>";
}

}  // namespace

TEST_CASE("minimal scenario takes defaults") {
    const auto s = load_scenario_string(kMinimal);
    CHECK(s.colony.agents.size() == 2);
    CHECK(s.colony.agents[0].accept_threshold == 0.5);
    CHECK(s.colony.agents[1].veracity == 0.8);
    CHECK(s.colony.agents[1].desire.gamma_minus == PropositionSet{1});
    CHECK(s.colony.trust.at(0, 1) == 0.4);
    CHECK(s.colony.trust.at(1, 0) == 0.7);
    CHECK(s.colony.observers == std::set<int>{1});
    CHECK(s.colony.attractiveness == 0.0);
    CHECK(s.run == RunConfig{});
    CHECK_FALSE(s.published_homogeneity);
    CHECK(s.note.empty());
    CHECK(s.report.clean());
}

TEST_CASE("parse errors name the offending field") {
    CHECK(error_path(replace(kMinimal, R"("initial_observation": "10")", R"("initial_observation": "101")")) ==
          "initial_observation");
    CHECK(error_path(replace(kMinimal, R"("initial_observation": "10")", R"("initial_observation": "1x")")) ==
          "initial_observation");
    CHECK(error_path(replace(kMinimal, R"(["rain"], "gamma_minus": [])", R"(["rain", "hail"], "gamma_minus": [])")) ==
          "agents[0].gamma_plus[1]");
    CHECK(error_path(replace(kMinimal, R"("gamma_minus": [], "veracity": 0.5)",
                             R"("gamma_minus": ["rain"], "veracity": 0.5)")) == "agents[0].gamma_minus");
    CHECK(error_path(replace(kMinimal, R"("veracity": 0.8)", R"("veracity": 1.8)")) == "agents[1].veracity");
    CHECK(error_path(replace(kMinimal, R"(, "veracity": 0.8)", "")) == "agents[1].veracity");
    CHECK(error_path(replace(kMinimal, R"([0.7, 1])", R"([0.7])")) == "trust[1]");
    CHECK(error_path(replace(kMinimal, R"("observers": [1])", R"("observers": [5])")) == "observers[0]");
    CHECK(error_path(replace(kMinimal, R"("priority": 0.5)", R"("priority": "high")")) == "propositions[0].priority");
    CHECK(error_path(replace(kMinimal, R"("schema_version": 1)", R"("schema_version": 2)")) == "schema_version");
    CHECK(error_path(replace(kMinimal, R"("observers": [1])",
                             R"("observers": [1], "run": {"accept_mode": "vote"})")) == "run.accept_mode");
    CHECK(error_path(replace(kMinimal, R"("observers": [1])", R"("observers": [1], "run": {"generations": 0})")) ==
          "run.generations");
    // self-trust other than 1 is structural
    CHECK(error_path(replace(kMinimal, R"([[1, 0.4])", R"([[0.9, 0.4])")) != "<no error>");
    CHECK_THROWS_AS(load_scenario_string("[1, 2]"), ScenarioParseError);
    CHECK_THROWS_AS(load_scenario_string("{ not json"), ScenarioParseError);
    CHECK_THROWS_AS(load_scenario_file("/nonexistent/dir/scenario.json"), std::ios_base::failure);
}

TEST_CASE("run block overrides") {
    const auto s = load_scenario_string(replace(
        kMinimal, R"("observers": [1])",
        R"("observers": [1], "attractiveness": 0.1, "run": {"generations": 30, "seed": 9, "accept_mode": "total",
           "stability_window": 4, "own_version": "reinsert", "instability_reference": "promoted"})"));
    CHECK(s.colony.attractiveness == 0.1);
    CHECK(s.run.generations == 30);
    CHECK(s.run.seed == 9);
    CHECK(s.run.accept_mode == AcceptMode::total);
    CHECK(s.run.window_for(2) == 4);
    CHECK(s.run.own_version == OwnVersionPolicy::reinsert);
    CHECK(s.run.instability_reference == InstabilityReference::promoted);
}

TEST_CASE("built-in examples") {
    SUBCASE("uniform nine-agent colony") {
        const auto s = builtin_example(1);
        CHECK(s.colony.agents.size() == 9);
        CHECK(s.colony.space.size() == 23);
        CHECK(s.colony.initial_observation.str() == "11101001101110101001010");
        CHECK(s.colony.observers == std::set<int>{9});
        for (std::size_t a = 0; a < 9; ++a)
            for (std::size_t b = 0; b < 9; ++b) CHECK(s.colony.trust.at(a, b) == 1.0);
        for (const auto& ag : s.colony.agents) {
            CHECK(ag.veracity == 0.5);
            CHECK(ag.accept_threshold == 0.5);
        }
        CHECK(s.published_homogeneity == 1.0);
    }
    SUBCASE("two-agent examples") {
        const auto ex3 = builtin_example(3);
        CHECK(ex3.colony.agents.size() == 2);
        CHECK(ex3.colony.trust.at(0, 1) == 0.6);
        CHECK(ex3.colony.observers == std::set<int>{1});
        const auto ex4 = builtin_example(4);
        CHECK(ex4.published_homogeneity == 0.3734);
    }
    SUBCASE("every example validates") {
        for (int n = 1; n <= kBuiltinExampleCount; ++n) {
            const auto s = builtin_example(n);
            CHECK(s.report.ok());
            CHECK_FALSE(s.note.empty());
            CHECK(s.run == RunConfig{});
        }
    }
    CHECK_THROWS_AS(builtin_example(0), ConfigError);
    CHECK_THROWS_AS(builtin_example(8), ConfigError);
}

TEST_CASE("save then load round-trips") {
    SUBCASE("built-in examples") {
        for (int n = 1; n <= kBuiltinExampleCount; ++n) {
            const auto s = builtin_example(n);
            const auto back = load_scenario_string(save_scenario_string(s));
            CHECK(back.colony.agents == s.colony.agents);
            CHECK(back.colony.trust == s.colony.trust);
            CHECK(back.colony.space == s.colony.space);
            CHECK(back.colony.observers == s.colony.observers);
            CHECK(back.published_homogeneity == s.published_homogeneity);
            CHECK(back.note == s.note);
            CHECK(homogeneity(back.colony) == homogeneity(s.colony));
        }
    }
    SUBCASE("random colonies give the same trace") {
        std::mt19937_64 g(44);
        for (int trial = 0; trial < 30; ++trial) {
            Scenario s;
            s.colony = testing::random_colony(g);
            s.run.seed = trial;
            s.run.generations = 200;
            s.report = validate_colony(s.colony);
            const auto back = load_scenario_string(save_scenario_string(s));
            CHECK(back.run == s.run);
            CHECK(homogeneity(back.colony) == homogeneity(s.colony));
            const auto t1 = run(s.colony, s.run);
            const auto t2 = run(back.colony, back.run);
            CHECK(t1.records == t2.records);
            CHECK(t1.converged_at == t2.converged_at);
        }
    }
}

TEST_CASE("trace format") {
    Trace t;
    t.seed = 42;
    t.stability_window = 40;
    t.homogeneity = 0.123456789012345;
    GenerationRecord r;
    r.generation = 0;
    r.outcome.agent_id = 3;
    r.outcome.action = TurnAction::spread;
    r.instability = 0.1234567;
    t.records.push_back(r);

    std::ostringstream os;
    write_trace(t, os);
    std::istringstream lines(os.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == kTraceHeader);
    std::getline(lines, line);
    CHECK(line == "0,3,spread,0.1234567,0");
    std::getline(lines, line);
    CHECK(line == "# seed=42");
    std::getline(lines, line);
    CHECK(line == "# generator=mt19937_64");

    const std::string all = os.str();
    CHECK(all.find("# mode=considered\n") != std::string::npos);
    CHECK(all.find("# window=40\n") != std::string::npos);
    CHECK(all.find("# own_version=discard\n") != std::string::npos);
    CHECK(all.find("# instability_reference=merged\n") != std::string::npos);
    CHECK(all.find("# h_C=0.123456789012345") != std::string::npos);
    CHECK(all.find("# converged_at=none\n") != std::string::npos);

    t.converged_at = 17;
    std::ostringstream again;
    write_trace(t, again);
    CHECK(again.str().find("# converged_at=17\n") != std::string::npos);
    CHECK(again.precision() == 6);
}
