#include "rumorsim/scenario.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace rumorsim {

using nlohmann::json;

namespace {

std::string index_path(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

const json& require(const json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(path.empty() ? key : path + "." + key, "missing required field");
    return *it;
}

std::string join(const std::string& path, const char* key) { return path.empty() ? key : path + "." + key; }

template <typename T>
T get_as(const json& value, const std::string& path) {
    try {
        return value.get<T>();
    } catch (const json::exception&) {
        throw ConfigError(path, "has the wrong type");
    }
}

double get_unit(const json& value, const std::string& path) {
    if (!value.is_number()) throw ConfigError(path, "must be a number");
    const double v = value.get<double>();
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(path, "must lie in [0,1]");
    return v;
}

template <typename T>
T get_or(const json& obj, const char* key, const std::string& path, T fallback) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return fallback;
    return get_as<T>(*it, join(path, key));
}

PropositionSet parse_prop_list(const json& arr, const PropositionSpace& space, const std::string& path) {
    if (!arr.is_array()) throw ConfigError(path, "must be an array of proposition names");
    PropositionSet out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto name = get_as<std::string>(arr[i], index_path(path, i));
        auto k = space.find(name);
        if (!k) throw ConfigError(index_path(path, i), "unknown proposition '" + name + "'");
        out.insert(*k);
    }
    return out;
}

json prop_list(const PropositionSet& set, const PropositionSpace& space) {
    json arr = json::array();
    for (PropIndex k : set) arr.push_back(space.name(k));
    return arr;
}

RunConfig parse_run(const json& doc) {
    RunConfig cfg;
    auto it = doc.find("run");
    if (it == doc.end()) return cfg;
    const json& run = *it;
    if (!run.is_object()) throw ConfigError("run", "must be an object");
    cfg.generations = get_or<std::size_t>(run, "generations", "run", cfg.generations);
    if (cfg.generations == 0) throw ConfigError("run.generations", "must be at least 1");
    cfg.seed = get_or<std::uint64_t>(run, "seed", "run", cfg.seed);
    cfg.stability_window = get_or<std::size_t>(run, "stability_window", "run", cfg.stability_window);

    const auto mode = get_or<std::string>(run, "accept_mode", "run", std::string(to_string(cfg.accept_mode)));
    auto parsed_mode = parse_accept_mode(mode);
    if (!parsed_mode) throw ConfigError("run.accept_mode", "expected 'total' or 'considered', got '" + mode + "'");
    cfg.accept_mode = *parsed_mode;

    const auto own = get_or<std::string>(run, "own_version", "run", std::string(to_string(cfg.own_version)));
    auto parsed_own = parse_own_version_policy(own);
    if (!parsed_own) throw ConfigError("run.own_version", "expected 'discard' or 'reinsert', got '" + own + "'");
    cfg.own_version = *parsed_own;

    const auto ref = get_or<std::string>(run, "instability_reference", "run",
                                         std::string(to_string(cfg.instability_reference)));
    auto parsed_ref = parse_instability_reference(ref);
    if (!parsed_ref)
        throw ConfigError("run.instability_reference", "expected 'merged' or 'promoted', got '" + ref + "'");
    cfg.instability_reference = *parsed_ref;
    return cfg;
}

Scenario from_json(const json& doc) {
    if (!doc.is_object()) throw ScenarioParseError("", "scenario document must be a JSON object");

    const int version = get_as<int>(require(doc, "schema_version", ""), "schema_version");
    if (version != kScenarioSchemaVersion)
        throw ConfigError("schema_version", "unsupported version " + std::to_string(version));

    Scenario s;
    Colony& c = s.colony;

    const json& props = require(doc, "propositions", "");
    if (!props.is_array() || props.empty()) throw ConfigError("propositions", "must be a non-empty array");
    std::vector<std::string> names;
    std::vector<double> priorities;
    for (std::size_t i = 0; i < props.size(); ++i) {
        const std::string path = index_path("propositions", i);
        names.push_back(get_as<std::string>(require(props[i], "name", path), path + ".name"));
        priorities.push_back(get_unit(require(props[i], "priority", path), path + ".priority"));
    }
    c.space = PropositionSpace(std::move(names), std::move(priorities));

    const auto observation = get_as<std::string>(require(doc, "initial_observation", ""), "initial_observation");
    try {
        c.initial_observation = Rumor::parse(observation);
    } catch (const ConfigError& e) {
        throw ConfigError("initial_observation", e.what());
    }
    if (c.initial_observation.size() != c.space.size())
        throw ConfigError("initial_observation", "length " + std::to_string(c.initial_observation.size()) +
                                                     " does not match " + std::to_string(c.space.size()) +
                                                     " propositions");

    const json& agents = require(doc, "agents", "");
    if (!agents.is_array() || agents.empty()) throw ConfigError("agents", "must be a non-empty array");
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const std::string path = index_path("agents", i);
        const json& a = agents[i];
        if (!a.is_object()) throw ConfigError(path, "must be an object");
        Agent ag;
        ag.id = get_as<int>(require(a, "id", path), path + ".id");
        ag.desire.gamma_plus = parse_prop_list(require(a, "gamma_plus", path), c.space, path + ".gamma_plus");
        ag.desire.gamma_minus = parse_prop_list(require(a, "gamma_minus", path), c.space, path + ".gamma_minus");
        for (PropIndex k : ag.desire.gamma_plus)
            if (ag.desire.gamma_minus.count(k))
                throw ConfigError(path + ".gamma_minus", "proposition '" + c.space.name(k) + "' is also in gamma_plus");
        ag.veracity = get_unit(require(a, "veracity", path), path + ".veracity");
        if (auto it = a.find("accept_threshold"); it != a.end()) ag.accept_threshold = get_unit(*it, path + ".accept_threshold");
        c.agents.push_back(std::move(ag));
    }

    const json& trust = require(doc, "trust", "");
    if (!trust.is_array() || trust.size() != c.agents.size())
        throw ConfigError("trust", "must be a " + std::to_string(c.agents.size()) + "x" +
                                       std::to_string(c.agents.size()) + " matrix");
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < trust.size(); ++i) {
        const std::string path = index_path("trust", i);
        if (!trust[i].is_array() || trust[i].size() != c.agents.size())
            throw ConfigError(path, "row must have " + std::to_string(c.agents.size()) + " entries");
        std::vector<double> row;
        for (std::size_t j = 0; j < trust[i].size(); ++j) row.push_back(get_unit(trust[i][j], index_path(path, j)));
        rows.push_back(std::move(row));
    }
    c.trust = TrustMatrix(std::move(rows));

    const json& observers = require(doc, "observers", "");
    if (!observers.is_array()) throw ConfigError("observers", "must be an array of agent ids");
    for (std::size_t i = 0; i < observers.size(); ++i) {
        const int id = get_as<int>(observers[i], index_path("observers", i));
        if (!c.index_of(id)) throw ConfigError(index_path("observers", i), "unknown agent id " + std::to_string(id));
        c.observers.insert(id);
    }

    if (auto it = doc.find("attractiveness"); it != doc.end()) c.attractiveness = get_unit(*it, "attractiveness");

    s.run = parse_run(doc);
    s.note = get_or<std::string>(doc, "note", "", std::string{});
    if (auto it = doc.find("published_homogeneity"); it != doc.end() && !it->is_null())
        s.published_homogeneity = get_as<double>(*it, "published_homogeneity");

    require_valid(c);
    s.report = validate_colony(c);
    return s;
}

json to_json(const Scenario& s) {
    const Colony& c = s.colony;
    json doc;
    doc["schema_version"] = kScenarioSchemaVersion;
    if (!s.note.empty()) doc["note"] = s.note;
    doc["propositions"] = json::array();
    for (std::size_t k = 0; k < c.space.size(); ++k)
        doc["propositions"].push_back({{"name", c.space.name(k)}, {"priority", c.space.priority(k)}});
    doc["initial_observation"] = c.initial_observation.str();
    doc["agents"] = json::array();
    for (const auto& ag : c.agents) {
        doc["agents"].push_back({{"id", ag.id},
                                 {"gamma_plus", prop_list(ag.desire.gamma_plus, c.space)},
                                 {"gamma_minus", prop_list(ag.desire.gamma_minus, c.space)},
                                 {"veracity", ag.veracity},
                                 {"accept_threshold", ag.accept_threshold}});
    }
    doc["trust"] = c.trust.rows();
    doc["observers"] = c.observers;
    doc["attractiveness"] = c.attractiveness;
    if (s.published_homogeneity) doc["published_homogeneity"] = *s.published_homogeneity;
    doc["run"] = {{"generations", s.run.generations},
                  {"seed", s.run.seed},
                  {"accept_mode", to_string(s.run.accept_mode)},
                  {"stability_window", s.run.stability_window},
                  {"own_version", to_string(s.run.own_version)},
                  {"instability_reference", to_string(s.run.instability_reference)}};
    return doc;
}

}  // namespace

Scenario load_scenario(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ScenarioParseError("", std::string("malformed scenario document: ") + e.what());
    }
    return from_json(doc);
}

Scenario load_scenario_string(const std::string& text) {
    std::istringstream in(text);
    return load_scenario(in);
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open scenario file '" + path + "'");
    return load_scenario(in);
}

void save_scenario(const Scenario& scenario, std::ostream& out) { out << to_json(scenario).dump(2) << '\n'; }

std::string save_scenario_string(const Scenario& scenario) {
    std::ostringstream os;
    save_scenario(scenario, os);
    return os.str();
}

void write_trace(const Trace& trace, std::ostream& out) {
    const auto old_precision = out.precision(10);
    out << kTraceHeader << '\n';
    for (const auto& r : trace.records) {
        out << r.generation << ',' << r.outcome.agent_id << ',' << to_string(r.outcome.action) << ','
            << r.instability << ',' << (r.consensus ? 1 : 0) << '\n';
    }
    out << "# seed=" << trace.seed << '\n';
    out << "# generator=" << RandomSource::kGenerator << '\n';
    out << "# mode=" << to_string(trace.accept_mode) << '\n';
    out << "# window=" << trace.stability_window << '\n';
    out << "# own_version=" << to_string(trace.own_version) << '\n';
    out << "# instability_reference=" << to_string(trace.instability_reference) << '\n';
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    out << "# h_C=" << trace.homogeneity << '\n';
    out << "# converged_at=";
    if (trace.converged_at) out << *trace.converged_at;
    else out << "none";
    out << '\n';
    out.precision(old_precision);
    if (!out) throw std::ios_base::failure("failed to write trace");
}

}  // namespace rumorsim
