#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <tuple>

#include "rumorsim/dissemination.hpp"
#include "rumorsim/metrics.hpp"
#include "rumorsim/model.hpp"
#include "rumorsim/scenario.hpp"
#include "rumorsim/simulation.hpp"

namespace py = pybind11;
using namespace rumorsim;

namespace {

// Box entries cross the boundary as (bits, spreader_id, weight) tuples.
using EntryTuple = std::tuple<std::string, int, double>;

RumorBox to_box(const std::vector<EntryTuple>& entries) {
    RumorBox box;
    for (const auto& [bits, id, w] : entries) box.put({Rumor::parse(bits), id, w});
    return box;
}

std::string trace_csv(const Trace& t) {
    std::ostringstream os;
    write_trace(t, os);
    return os.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Seeded rumor propagation over a trust-weighted agent colony";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::enum_<AcceptMode>(m, "AcceptMode").value("total", AcceptMode::total).value("considered", AcceptMode::considered);
    py::enum_<OwnVersionPolicy>(m, "OwnVersionPolicy")
        .value("discard", OwnVersionPolicy::discard)
        .value("reinsert", OwnVersionPolicy::reinsert);
    py::enum_<InstabilityReference>(m, "InstabilityReference")
        .value("merged", InstabilityReference::merged)
        .value("promoted", InstabilityReference::promoted);
    py::enum_<TurnAction>(m, "TurnAction")
        .value("skipped_empty_box", TurnAction::skipped_empty_box)
        .value("rejected", TurnAction::rejected)
        .value("spread", TurnAction::spread);

    py::class_<Desire>(m, "Desire")
        .def(py::init<>())
        .def(py::init([](PropositionSet plus, PropositionSet minus) { return Desire{std::move(plus), std::move(minus)}; }),
             py::arg("gamma_plus"), py::arg("gamma_minus"))
        .def_readwrite("gamma_plus", &Desire::gamma_plus)
        .def_readwrite("gamma_minus", &Desire::gamma_minus);

    py::class_<Agent>(m, "Agent")
        .def(py::init<>())
        .def_readwrite("id", &Agent::id)
        .def_readwrite("desire", &Agent::desire)
        .def_readwrite("veracity", &Agent::veracity)
        .def_readwrite("accept_threshold", &Agent::accept_threshold)
        .def_property_readonly("box", [](const Agent& a) {
            std::vector<EntryTuple> out;
            for (const auto& e : a.box.entries()) out.emplace_back(e.rumor.str(), e.spreader_id, e.weight);
            return out;
        })
        .def_property_readonly("last_promoted", [](const Agent& a) -> std::optional<std::string> {
            if (!a.last_promoted) return std::nullopt;
            return a.last_promoted->str();
        });

    py::class_<Colony>(m, "Colony")
        .def_property_readonly("proposition_names", [](const Colony& c) { return c.space.names(); })
        .def_property_readonly("priorities", [](const Colony& c) { return c.space.priorities(); })
        .def_readwrite("agents", &Colony::agents)
        .def_property("trust", [](const Colony& c) { return c.trust.rows(); },
                      [](Colony& c, std::vector<std::vector<double>> rows) { c.trust = TrustMatrix(std::move(rows)); })
        .def_readwrite("observers", &Colony::observers)
        .def_property_readonly("initial_observation", [](const Colony& c) { return c.initial_observation.str(); })
        .def_readwrite("attractiveness", &Colony::attractiveness);

    py::class_<TrustTriple>(m, "TrustTriple")
        .def_readonly("a", &TrustTriple::a)
        .def_readonly("b", &TrustTriple::b)
        .def_readonly("c", &TrustTriple::c)
        .def_readonly("direct", &TrustTriple::direct)
        .def_readonly("indirect", &TrustTriple::indirect);

    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("errors", &ValidationReport::errors)
        .def_readonly("diagonal_violations", &ValidationReport::diagonal_violations)
        .def_readonly("triangle_violations", &ValidationReport::triangle_violations)
        .def_readonly("desire_overlaps", &ValidationReport::desire_overlaps)
        .def("ok", &ValidationReport::ok)
        .def("clean", &ValidationReport::clean)
        .def("describe", &ValidationReport::describe);

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init([](std::size_t generations, std::uint64_t seed, AcceptMode mode, std::size_t window,
                         OwnVersionPolicy own, InstabilityReference ref) {
                 return RunConfig{generations, seed, mode, window, own, ref};
             }),
             py::arg("generations") = 5000, py::arg("seed") = 0, py::arg("accept_mode") = AcceptMode::considered,
             py::arg("stability_window") = 0, py::arg("own_version") = OwnVersionPolicy::discard,
             py::arg("instability_reference") = InstabilityReference::merged)
        .def_readwrite("generations", &RunConfig::generations)
        .def_readwrite("seed", &RunConfig::seed)
        .def_readwrite("accept_mode", &RunConfig::accept_mode)
        .def_readwrite("stability_window", &RunConfig::stability_window)
        .def_readwrite("own_version", &RunConfig::own_version)
        .def_readwrite("instability_reference", &RunConfig::instability_reference);

    py::class_<Scenario>(m, "Scenario")
        .def_readwrite("colony", &Scenario::colony)
        .def_readwrite("run", &Scenario::run)
        .def_readwrite("note", &Scenario::note)
        .def_readwrite("published_homogeneity", &Scenario::published_homogeneity)
        .def_readonly("report", &Scenario::report);

    py::class_<GenerationRecord>(m, "GenerationRecord")
        .def_readonly("generation", &GenerationRecord::generation)
        .def_property_readonly("agent_id", [](const GenerationRecord& r) { return r.outcome.agent_id; })
        .def_property_readonly("action", [](const GenerationRecord& r) { return r.outcome.action; })
        .def_property_readonly("promoted", [](const GenerationRecord& r) -> std::optional<std::string> {
            if (!r.outcome.promoted) return std::nullopt;
            return r.outcome.promoted->str();
        })
        .def_readonly("instability", &GenerationRecord::instability)
        .def_readonly("consensus", &GenerationRecord::consensus);

    py::class_<Trace>(m, "Trace")
        .def_readonly("records", &Trace::records)
        .def_readonly("homogeneity", &Trace::homogeneity)
        .def_readonly("converged_at", &Trace::converged_at)
        .def_readonly("seed", &Trace::seed)
        .def_readonly("stability_window", &Trace::stability_window)
        .def("instabilities", &Trace::instabilities)
        .def("to_csv", &trace_csv);

    m.def("builtin_example", &builtin_example, py::arg("n"));
    m.def("load_scenario", &load_scenario_string, py::arg("text"));
    m.def("load_scenario_file", &load_scenario_file, py::arg("path"));
    m.def("save_scenario", &save_scenario_string, py::arg("scenario"));

    m.def("validate_colony", &validate_colony, py::arg("colony"));
    m.def("homogeneity", &homogeneity, py::arg("colony"));
    m.def("heterogeneity_matrix", &heterogeneity_matrix, py::arg("colony"));
    m.def("run", [](const Colony& c, const RunConfig& cfg) { return run(c, cfg); }, py::arg("colony"),
          py::arg("config") = RunConfig{}, py::call_guard<py::gil_scoped_release>());

    m.def("merge_box", [](const std::vector<EntryTuple>& entries) { return merge_box(to_box(entries)).str(); },
          py::arg("entries"));
    m.def(
        "classify",
        [](const std::string& bits, const Desire& d) {
            const auto c = classify(Rumor::parse(bits), d);
            return std::make_tuple(c.accepted, c.unaccepted, c.inconsiderable);
        },
        py::arg("rumor"), py::arg("desire"));
    m.def(
        "accept",
        [](const std::string& bits, const Desire& d, double threshold, double attractiveness, AcceptMode mode) {
            Agent a;
            a.desire = d;
            a.accept_threshold = threshold;
            const auto rumor = Rumor::parse(bits);
            const auto dec = accept(rumor, a, rumor.size(), attractiveness, mode);
            return std::make_pair(dec.accepted, dec.ratio);
        },
        py::arg("rumor"), py::arg("desire"), py::arg("threshold") = 0.5, py::arg("attractiveness") = 0.0,
        py::arg("mode") = AcceptMode::considered);
    m.def(
        "detect_convergence",
        [](const std::vector<double>& xs, std::size_t window) { return detect_convergence(xs, window); },
        py::arg("instability"), py::arg("window"));
}
