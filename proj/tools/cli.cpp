#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "rumorsim/metrics.hpp"
#include "rumorsim/scenario.hpp"
#include "rumorsim/simulation.hpp"

namespace rumorsim::cli {

namespace {

struct SourceOptions {
    int example = 0;
    std::string scenario;
};

struct RunOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> generations;
    std::optional<std::string> mode;
    std::optional<double> threshold;
    std::optional<std::size_t> window;
    std::optional<std::string> own_version;
    std::optional<std::string> instability_ref;
};

struct SeedRange {
    std::uint64_t first = 0;
    std::uint64_t last = 0;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void add_source(CLI::App* cmd, SourceOptions& src) {
    auto* ex = cmd->add_option("--example", src.example, "Built-in worked example (1..7)");
    auto* sc = cmd->add_option("--scenario,scenario", src.scenario, "Scenario document (JSON)");
    ex->excludes(sc);
}

void add_run_overrides(CLI::App* cmd, RunOverrides& o, bool with_seed) {
    if (with_seed) cmd->add_option("--seed", o.seed, "Random seed");
    cmd->add_option("--generations", o.generations, "Generation cap (default 5000)")->check(CLI::PositiveNumber);
    cmd->add_option("--mode", o.mode, "Accepting rule")->check(CLI::IsMember({"total", "considered"}));
    cmd->add_option("--threshold", o.threshold, "Accepting threshold for every agent")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--window", o.window, "Stability window in generations (default 20 per agent)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--own-version", o.own_version, "What a spreader keeps in its box")
        ->check(CLI::IsMember({"discard", "reinsert"}));
    cmd->add_option("--instability-ref", o.instability_ref, "Version instability is measured on")
        ->check(CLI::IsMember({"merged", "promoted"}));
}

Scenario load_source(const SourceOptions& src) {
    if (src.example != 0) return builtin_example(src.example);
    if (src.scenario.empty()) throw UsageError("either --example or a scenario path is required");
    return load_scenario_file(src.scenario);
}

void apply(const RunOverrides& o, Scenario& s) {
    if (o.seed) s.run.seed = *o.seed;
    if (o.generations) s.run.generations = *o.generations;
    if (o.mode) s.run.accept_mode = *parse_accept_mode(*o.mode);
    if (o.window) s.run.stability_window = *o.window;
    if (o.own_version) s.run.own_version = *parse_own_version_policy(*o.own_version);
    if (o.instability_ref) s.run.instability_reference = *parse_instability_reference(*o.instability_ref);
    if (o.threshold)
        for (auto& ag : s.colony.agents) ag.accept_threshold = *o.threshold;
}

SeedRange parse_seeds(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) throw UsageError("--seeds expects A..B");
    try {
        std::size_t used = 0;
        const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
        SeedRange r{std::stoull(a, &used), 0};
        if (used != a.size()) throw UsageError("--seeds: bad lower bound");
        r.last = std::stoull(b, &used);
        if (used != b.size()) throw UsageError("--seeds: bad upper bound");
        if (r.first > r.last) throw UsageError("--seeds: empty seed range");
        return r;
    } catch (const std::logic_error&) {
        throw UsageError("--seeds expects A..B with non-negative integers");
    }
}

std::string format_converged(const std::optional<std::size_t>& m) {
    return m ? std::to_string(*m) : std::string("none");
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::ios_base::failure("cannot open '" + path + "' for writing");
    return f;
}

void warn_published(const Scenario& s, double computed, std::ostream& err) {
    if (!s.published_homogeneity) return;
    const double published = *s.published_homogeneity;
    if (std::abs(computed - published) > 0.01 * std::abs(published))
        err << "warning: published h_C=" << published << " differs from computed h_C=" << computed << '\n';
}

int cmd_run(const SourceOptions& src, const RunOverrides& o, const std::string& out_path, std::ostream& out,
            std::ostream& err) {
    Scenario s = load_source(src);
    apply(o, s);
    const Trace trace = run(s.colony, s.run);

    std::ostream* summary = &out;
    if (out_path.empty()) {
        write_trace(trace, out);
        summary = &err;
    } else {
        auto f = open_out(out_path);
        write_trace(trace, f);
        f.close();
        if (!f) throw std::ios_base::failure("failed writing '" + out_path + "'");
    }
    *summary << std::setprecision(10) << "h_C=" << trace.homogeneity
             << " converged_at=" << format_converged(trace.converged_at) << '\n';
    return kExitOk;
}

int cmd_homogeneity(const SourceOptions& src, std::ostream& out, std::ostream& err) {
    const Scenario s = load_source(src);
    const double h = homogeneity(s.colony);
    out << std::setprecision(10) << "h_C=" << h << '\n';
    const auto matrix = heterogeneity_matrix(s.colony);
    out << "H";
    for (const auto& ag : s.colony.agents) out << ',' << ag.id;
    out << '\n';
    for (std::size_t a = 0; a < matrix.size(); ++a) {
        out << s.colony.agents[a].id;
        for (double v : matrix[a]) out << ',' << v;
        out << '\n';
    }
    warn_published(s, h, err);
    return kExitOk;
}

int cmd_validate(const SourceOptions& src, std::ostream& out) {
    const Scenario s = load_source(src);
    const auto& r = s.report;
    out << r.describe();
    out << "errors=" << (r.errors.size() + r.diagonal_violations.size() + r.desire_overlaps.size())
        << " warnings=" << r.triangle_violations.size() << '\n';
    return r.ok() ? kExitOk : kExitUsage;
}

struct SeedResult {
    std::uint64_t seed = 0;
    std::optional<std::size_t> converged_at;
    std::size_t generations_run = 0;
    std::string trace_csv;
};

int cmd_sweep(const SourceOptions& src, const RunOverrides& o, const std::string& seeds_text,
              const std::string& out_dir, unsigned jobs, std::ostream& out) {
    const SeedRange range = parse_seeds(seeds_text);
    Scenario base = load_source(src);
    apply(o, base);
    if (!out_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec) throw std::ios_base::failure("cannot create '" + out_dir + "': " + ec.message());
    }

    const std::size_t count = static_cast<std::size_t>(range.last - range.first) + 1;
    std::vector<SeedResult> results(count);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                RunConfig cfg = base.run;
                cfg.seed = range.first + i;
                const Trace t = run(base.colony, cfg);
                SeedResult& r = results[i];
                r.seed = cfg.seed;
                r.converged_at = t.converged_at;
                r.generations_run = t.records.size();
                if (!out_dir.empty()) {
                    std::ostringstream os;
                    write_trace(t, os);
                    r.trace_csv = os.str();
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);

    std::size_t converged = 0;
    double sum_m = 0.0;
    for (const auto& r : results) {
        if (r.converged_at) {
            ++converged;
            sum_m += static_cast<double>(*r.converged_at);
        }
    }
    const double fraction = static_cast<double>(converged) / static_cast<double>(count);

    if (!out_dir.empty()) {
        const std::filesystem::path dir(out_dir);
        for (const auto& r : results) {
            auto f = open_out((dir / ("trace_seed_" + std::to_string(r.seed) + ".csv")).string());
            f << r.trace_csv;
            if (!f) throw std::ios_base::failure("failed writing trace for seed " + std::to_string(r.seed));
        }
        auto f = open_out((dir / "summary.csv").string());
        f << "seed,converged_at,generations_run\n";
        for (const auto& r : results) f << r.seed << ',' << format_converged(r.converged_at) << ',' << r.generations_run << '\n';
        f << "# seeds=" << count << '\n' << "# converged_fraction=" << fraction << '\n';
        if (!f) throw std::ios_base::failure("failed writing summary.csv");
    }

    out << "seeds=" << count << " converged=" << converged << " converged_fraction=" << fraction
        << " mean_converged_at=";
    if (converged) out << std::setprecision(10) << sum_m / static_cast<double>(converged);
    else out << "none";
    out << '\n';
    return kExitOk;
}

int cmd_example(int n, const std::string& out_path, std::ostream& out) {
    const Scenario s = builtin_example(n);
    if (out_path.empty()) {
        save_scenario(s, out);
        return kExitOk;
    }
    auto f = open_out(out_path);
    save_scenario(s, f);
    if (!f) throw std::ios_base::failure("failed writing '" + out_path + "'");
    return kExitOk;
}

}  // namespace

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rumor propagation over a complete trust-weighted agent network", "rumorsim"};
    app.require_subcommand(1);

    SourceOptions src;
    RunOverrides overrides;
    std::string out_path, out_dir, seeds;
    unsigned jobs = 0;
    int example_n = 0;

    auto* run_cmd = app.add_subcommand("run", "Simulate and write the per-generation trace");
    add_source(run_cmd, src);
    add_run_overrides(run_cmd, overrides, true);
    run_cmd->add_option("--out", out_path, "Trace file (default: standard output)");

    auto* hom_cmd = app.add_subcommand("homogeneity", "Print h_C and the pairwise heterogeneity matrix");
    add_source(hom_cmd, src);

    auto* val_cmd = app.add_subcommand("validate", "Check structural invariants and trust assumptions");
    add_source(val_cmd, src);

    auto* sweep_cmd = app.add_subcommand("sweep", "Run a range of seeds and aggregate convergence");
    add_source(sweep_cmd, src);
    add_run_overrides(sweep_cmd, overrides, false);
    sweep_cmd->add_option("--seeds", seeds, "Inclusive seed range A..B")->required();
    sweep_cmd->add_option("--out-dir", out_dir, "Directory for per-seed traces and summary.csv");
    sweep_cmd->add_option("--jobs", jobs, "Worker threads (default: all cores)");

    auto* ex_cmd = app.add_subcommand("example", "Write a built-in example as a scenario document");
    ex_cmd->add_option("n", example_n, "Example number (1..7)")->required();
    ex_cmd->add_option("--out", out_path, "Output file (default: standard output)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();  // program name
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*run_cmd) return cmd_run(src, overrides, out_path, out, err);
        if (*hom_cmd) return cmd_homogeneity(src, out, err);
        if (*val_cmd) return cmd_validate(src, out);
        if (*sweep_cmd) return cmd_sweep(src, overrides, seeds, out_dir, jobs, out);
        if (*ex_cmd) return cmd_example(example_n, out_path, out);
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace rumorsim::cli
