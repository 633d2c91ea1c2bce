#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "rumorsim/metrics.hpp"
#include "rumorsim/model.hpp"
#include "rumorsim/simulation.hpp"

namespace rumorsim {

inline constexpr int kScenarioSchemaVersion = 1;
inline constexpr int kBuiltinExampleCount = 7;

/// The document could not be parsed at all (not JSON, wrong top-level shape).
class ScenarioParseError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

struct Scenario {
    Colony colony;
    RunConfig run;
    /// Free-form text carried through load/save.
    std::string note;
    /// Homogeneity reported alongside the published example, when one exists.
    std::optional<double> published_homogeneity;
    ValidationReport report;
};

/// Parses and validates a scenario document. Trust-triangle violations are
/// attached as warnings; structural errors throw ConfigError with a field path.
Scenario load_scenario(std::istream& in);
Scenario load_scenario_file(const std::string& path);
Scenario load_scenario_string(const std::string& text);

void save_scenario(const Scenario& scenario, std::ostream& out);
std::string save_scenario_string(const Scenario& scenario);

/// The seven worked examples over the shared 23-proposition space. n in 1..7.
Scenario builtin_example(int n);

inline constexpr const char* kTraceHeader = "generation,active_agent,action,instability,consensus";

/// Comma-separated per-generation table followed by '#' metadata lines.
void write_trace(const Trace& trace, std::ostream& out);

}  // namespace rumorsim
