#include <doctest.h>

#include <random>

#include "rumorsim/model.hpp"
#include "rumorsim/scenario.hpp"

using namespace rumorsim;

namespace {

PropositionSpace space_of(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back("p" + std::to_string(i));
    return {names, std::vector<double>(n, 0.5)};
}

Colony two_agent_colony() {
    Colony c;
    c.space = space_of(3);
    c.initial_observation = Rumor::parse("101");
    c.agents = {Agent{.id = 1}, Agent{.id = 2}};
    c.trust = TrustMatrix(2);
    c.observers = {1};
    return c;
}

}  // namespace

TEST_CASE("desire_vector maps memberships to +1/-1/0") {
    const auto space = space_of(5);
    CHECK(desire_vector({{0, 4}, {1, 2}}, space) == DesireVector{1, -1, -1, 0, 1});
    CHECK(desire_vector({{0, 2, 3}, {1}}, space) == DesireVector{1, -1, 1, 1, 0});
    CHECK(desire_vector({}, space_of(3)) == DesireVector{0, 0, 0});
}

TEST_CASE("desire_vector rejects bad desires") {
    const auto space = space_of(3);
    CHECK_THROWS_AS(desire_vector({{3}, {}}, space), ConfigError);
    CHECK_THROWS_AS(desire_vector({{1}, {1}}, space), ConfigError);
    CHECK_THROWS_AS(desire_from_vector({0, 2}), ConfigError);
}

TEST_CASE("desire_vector is a bijection onto {-1,0,1}^n") {
    std::mt19937_64 g(11);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = 1 + g() % 23;
        DesireVector v(n);
        for (auto& x : v) x = static_cast<int>(g() % 3) - 1;
        const Desire d = desire_from_vector(v);
        CHECK(desire_vector(d, space_of(n)) == v);
        CHECK(desire_from_vector(desire_vector(d, space_of(n))) == d);
    }
}

TEST_CASE("PropositionSpace invariants") {
    CHECK_THROWS_AS(PropositionSpace({}, {}), ConfigError);
    CHECK_THROWS_AS(PropositionSpace({"a", "a"}, {0.1, 0.2}), ConfigError);
    CHECK_THROWS_AS(PropositionSpace({"a"}, {1.5}), ConfigError);
    CHECK_THROWS_AS(PropositionSpace({"a", "b"}, {0.5}), ConfigError);
    const PropositionSpace s({"a", "b"}, {0.0, 1.0});
    CHECK(s.find("b") == 1u);
    CHECK_FALSE(s.find("c"));
}

TEST_CASE("Rumor parsing") {
    CHECK(Rumor::parse("010").str() == "010");
    CHECK(Rumor::parse("010").bit(1));
    CHECK_THROWS_AS(Rumor::parse("01x"), ConfigError);
    CHECK_THROWS_AS(Rumor(std::vector<std::uint8_t>{0, 2}), ConfigError);
}

TEST_CASE("RumorBox drops bit-identical rumors") {
    RumorBox box;
    CHECK(box.put({Rumor::parse("101"), 1, 0.3}));
    CHECK_FALSE(box.put({Rumor::parse("101"), 2, 0.9}));
    CHECK(box.size() == 1);
    CHECK(box.entries()[0].weight == 0.3);
}

TEST_CASE("validate_colony: identity trust is clean") {
    const auto c = two_agent_colony();
    const auto r = validate_colony(c);
    CHECK(r.clean());
}

TEST_CASE("validate_colony: trust triangle violations are warnings") {
    const auto s = builtin_example(5);
    const auto& r = s.report;
    CHECK(r.ok());
    CHECK_FALSE(r.clean());
    bool found = false;
    for (const auto& t : r.triangle_violations) {
        if (t.a == 1 && t.b == 2 && t.c == 8) {
            found = true;
            CHECK(t.direct == doctest::Approx(0.3));
            CHECK(t.indirect == doctest::Approx(0.58 * 0.79));
            CHECK(t.indirect == doctest::Approx(0.4582));
        }
    }
    CHECK(found);
}

TEST_CASE("validate_colony: structural problems") {
    SUBCASE("desire overlap") {
        auto c = two_agent_colony();
        c.agents[0].desire = {{1}, {1}};
        const auto r = validate_colony(c);
        REQUIRE(r.desire_overlaps.size() == 1);
        CHECK(r.desire_overlaps[0] == std::pair<int, PropIndex>{1, 1});
        CHECK_FALSE(r.ok());
    }
    SUBCASE("diagonal") {
        auto c = two_agent_colony();
        c.trust.set(1, 1, 0.9);
        const auto r = validate_colony(c);
        CHECK(r.diagonal_violations == std::vector<int>{2});
    }
    SUBCASE("dimension mismatch") {
        auto c = two_agent_colony();
        c.trust = TrustMatrix(3);
        c.initial_observation = Rumor::parse("10");
        const auto r = validate_colony(c);
        CHECK(r.errors.size() == 2);
        CHECK_THROWS_AS(require_valid(c), ConfigError);
    }
    SUBCASE("observers must be a strict non-empty subset") {
        auto c = two_agent_colony();
        c.observers = {1, 2};
        CHECK_FALSE(validate_colony(c).ok());
        c.observers = {};
        CHECK_FALSE(validate_colony(c).ok());
        c.observers = {7};
        CHECK_FALSE(validate_colony(c).ok());
    }
}

TEST_CASE("built-in examples have no desire overlaps or diagonal violations") {
    for (int n = 1; n <= kBuiltinExampleCount; ++n) {
        const auto r = validate_colony(builtin_example(n).colony);
        CHECK(r.ok());
        CHECK(r.desire_overlaps.empty());
        CHECK(r.diagonal_violations.empty());
    }
}

TEST_CASE("zero triangle violations means the inequality holds for every triple") {
    std::mt19937_64 g(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int clean = 0;
    for (int trial = 0; trial < 500; ++trial) {
        auto c = two_agent_colony();
        const std::size_t n = 2 + g() % 4;
        c.agents.clear();
        for (std::size_t i = 0; i < n; ++i) c.agents.push_back(Agent{.id = static_cast<int>(i + 1)});
        c.trust = TrustMatrix(n);
        // high trust values make clean matrices common
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) c.trust.set(i, j, 0.7 + 0.3 * u(g));
        const auto r = validate_colony(c);
        if (!r.triangle_violations.empty()) continue;
        ++clean;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t k = 0; k < n; ++k)
                    CHECK(c.trust.at(a, b) >= c.trust.at(a, k) * c.trust.at(k, b) - 1e-12);
    }
    CHECK(clean > 50);
}
