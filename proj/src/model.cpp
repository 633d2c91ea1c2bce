#include "rumorsim/model.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace rumorsim {

namespace {

// Float noise on products such as 0.58 * 0.79 must not flag equal trusts.
constexpr double kTriangleSlack = 1e-12;

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

PropositionSpace::PropositionSpace(std::vector<std::string> names, std::vector<double> priorities)
    : names_(std::move(names)), priorities_(std::move(priorities)) {
    if (names_.empty()) throw ConfigError("propositions", "at least one proposition is required");
    if (names_.size() != priorities_.size())
        throw ConfigError("propositions", "names and priorities differ in length");
    std::unordered_set<std::string> seen;
    for (std::size_t k = 0; k < names_.size(); ++k) {
        const std::string path = "propositions[" + std::to_string(k) + "]";
        if (!seen.insert(names_[k]).second) throw ConfigError(path + ".name", "duplicate name '" + names_[k] + "'");
        if (!in_unit_interval(priorities_[k])) throw ConfigError(path + ".priority", "priority must lie in [0,1]");
    }
}

std::optional<PropIndex> PropositionSpace::find(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<PropIndex>(it - names_.begin());
}

Rumor::Rumor(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_)
        if (b > 1) throw ConfigError("", "rumor bits must be 0 or 1");
}

Rumor Rumor::parse(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') throw ConfigError("", "rumor string may only contain '0' and '1'");
        bits.push_back(c == '1' ? 1 : 0);
    }
    return Rumor(std::move(bits));
}

std::string Rumor::str() const {
    std::string out;
    out.reserve(bits_.size());
    for (auto b : bits_) out.push_back(b ? '1' : '0');
    return out;
}

DesireVector desire_vector(const Desire& desire, const PropositionSpace& space) {
    DesireVector vec(space.size(), 0);
    for (PropIndex k : desire.gamma_plus) {
        if (k >= space.size()) throw ConfigError("gamma_plus", "proposition index " + std::to_string(k) + " out of range");
        vec[k] = 1;
    }
    for (PropIndex k : desire.gamma_minus) {
        if (k >= space.size()) throw ConfigError("gamma_minus", "proposition index " + std::to_string(k) + " out of range");
        if (vec[k] == 1) throw ConfigError("gamma_minus", "proposition " + space.name(k) + " is also in gamma_plus");
        vec[k] = -1;
    }
    return vec;
}

Desire desire_from_vector(const DesireVector& vec) {
    Desire d;
    for (std::size_t k = 0; k < vec.size(); ++k) {
        switch (vec[k]) {
            case 1: d.gamma_plus.insert(k); break;
            case -1: d.gamma_minus.insert(k); break;
            case 0: break;
            default: throw ConfigError("", "desire vector entries must be -1, 0 or 1");
        }
    }
    return d;
}

bool RumorBox::contains(const Rumor& rumor) const {
    return std::any_of(entries_.begin(), entries_.end(), [&](const BoxEntry& e) { return e.rumor == rumor; });
}

bool RumorBox::put(BoxEntry entry) {
    if (contains(entry.rumor)) return false;
    entries_.push_back(std::move(entry));
    return true;
}

TrustMatrix::TrustMatrix(std::size_t n, double off_diagonal) : n_(n), values_(n * n, off_diagonal) {
    for (std::size_t i = 0; i < n; ++i) values_[i * n + i] = 1.0;
}

TrustMatrix::TrustMatrix(std::vector<std::vector<double>> rows) : n_(rows.size()) {
    values_.reserve(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
        if (rows[i].size() != n_)
            throw ConfigError("trust[" + std::to_string(i) + "]", "trust matrix must be square");
        values_.insert(values_.end(), rows[i].begin(), rows[i].end());
    }
}

std::vector<std::vector<double>> TrustMatrix::rows() const {
    std::vector<std::vector<double>> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i].assign(values_.begin() + i * n_, values_.begin() + (i + 1) * n_);
    return out;
}

std::optional<std::size_t> Colony::index_of(int agent_id) const {
    for (std::size_t i = 0; i < agents.size(); ++i)
        if (agents[i].id == agent_id) return i;
    return std::nullopt;
}

ValidationReport validate_colony(const Colony& colony) {
    ValidationReport report;
    const std::size_t n = colony.agents.size();
    const std::size_t p = colony.space.size();

    if (n == 0) report.errors.emplace_back("agents: colony has no agents");
    if (colony.trust.size() != n)
        report.errors.push_back("trust: matrix is " + std::to_string(colony.trust.size()) + "x" +
                                std::to_string(colony.trust.size()) + " but there are " + std::to_string(n) + " agents");
    if (colony.initial_observation.size() != p)
        report.errors.push_back("initial_observation: length " + std::to_string(colony.initial_observation.size()) +
                                " does not match " + std::to_string(p) + " propositions");
    if (!in_unit_interval(colony.attractiveness)) report.errors.emplace_back("attractiveness: must lie in [0,1]");

    std::set<int> ids;
    for (std::size_t i = 0; i < n; ++i) {
        const Agent& ag = colony.agents[i];
        const std::string path = "agents[" + std::to_string(i) + "]";
        if (!ids.insert(ag.id).second) report.errors.push_back(path + ".id: duplicate id " + std::to_string(ag.id));
        if (!in_unit_interval(ag.veracity)) report.errors.push_back(path + ".veracity: must lie in [0,1]");
        if (!in_unit_interval(ag.accept_threshold)) report.errors.push_back(path + ".accept_threshold: must lie in [0,1]");
        for (PropIndex k : ag.desire.gamma_plus) {
            if (k >= p) report.errors.push_back(path + ".gamma_plus: index " + std::to_string(k) + " out of range");
            else if (ag.desire.gamma_minus.count(k)) report.desire_overlaps.emplace_back(ag.id, k);
        }
        for (PropIndex k : ag.desire.gamma_minus)
            if (k >= p) report.errors.push_back(path + ".gamma_minus: index " + std::to_string(k) + " out of range");
    }

    if (colony.observers.empty()) report.errors.emplace_back("observers: at least one observer is required");
    if (n > 0 && colony.observers.size() >= n)
        report.errors.emplace_back("observers: must be a strict subset of the agents");
    for (int o : colony.observers)
        if (!ids.count(o)) report.errors.push_back("observers: unknown agent id " + std::to_string(o));

    if (colony.trust.size() == n) {
        const auto& t = colony.trust;
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                if (!in_unit_interval(t.at(a, b)))
                    report.errors.push_back("trust[" + std::to_string(a) + "][" + std::to_string(b) + "]: must lie in [0,1]");
            }
            if (t.at(a, a) != 1.0) report.diagonal_violations.push_back(colony.agents[a].id);
        }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c) {
                    const double indirect = t.at(a, c) * t.at(c, b);
                    if (t.at(a, b) + kTriangleSlack < indirect)
                        report.triangle_violations.push_back(
                            {colony.agents[a].id, colony.agents[b].id, colony.agents[c].id, t.at(a, b), indirect});
                }
    }
    return report;
}

void require_valid(const Colony& colony) {
    const auto report = validate_colony(colony);
    if (!report.errors.empty()) {
        const auto& first = report.errors.front();
        const auto colon = first.find(": ");
        if (colon == std::string::npos) throw ConfigError("", first);
        throw ConfigError(first.substr(0, colon), first.substr(colon + 2));
    }
    if (!report.diagonal_violations.empty())
        throw ConfigError("trust", "agent " + std::to_string(report.diagonal_violations.front()) +
                                       " does not trust itself completely");
    if (!report.desire_overlaps.empty())
        throw ConfigError("agents", "agent " + std::to_string(report.desire_overlaps.front().first) +
                                        " has proposition index " +
                                        std::to_string(report.desire_overlaps.front().second) +
                                        " in both gamma_plus and gamma_minus");
}

std::string ValidationReport::describe() const {
    std::ostringstream os;
    for (const auto& e : errors) os << "error: " << e << '\n';
    for (int id : diagonal_violations) os << "error: agent " << id << " self-trust is not 1\n";
    for (const auto& [id, k] : desire_overlaps)
        os << "error: agent " << id << " has proposition index " << k << " in both gamma_plus and gamma_minus\n";
    for (const auto& t : triangle_violations)
        os << "warning: trust triangle (" << t.a << ',' << t.b << ',' << t.c << "): tau(" << t.a << ',' << t.b
           << ")=" << t.direct << " < tau(" << t.a << ',' << t.c << ")*tau(" << t.c << ',' << t.b
           << ")=" << t.indirect << '\n';
    return os.str();
}

}  // namespace rumorsim
