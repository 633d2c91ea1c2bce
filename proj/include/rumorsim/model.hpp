#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rumorsim {

/// Raised when a model object violates a structural invariant (bad index,
/// length mismatch, value out of range). `path()` names the offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& what)
        : std::runtime_error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

using PropIndex = std::size_t;
using PropositionSet = std::set<PropIndex>;

/// Ordered atomic propositions with their global priorities in [0,1].
class PropositionSpace {
public:
    PropositionSpace() = default;
    PropositionSpace(std::vector<std::string> names, std::vector<double> priorities);

    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::vector<double>& priorities() const noexcept { return priorities_; }
    double priority(PropIndex k) const { return priorities_.at(k); }
    const std::string& name(PropIndex k) const { return names_.at(k); }
    std::optional<PropIndex> find(std::string_view name) const;

    bool operator==(const PropositionSpace&) const = default;

private:
    std::vector<std::string> names_;
    std::vector<double> priorities_;
};

/// A CLF formula over P: bit k is 1 when p_k appears un-negated.
class Rumor {
public:
    Rumor() = default;
    explicit Rumor(std::vector<std::uint8_t> bits);
    static Rumor zeros(std::size_t n) { return Rumor(std::vector<std::uint8_t>(n, 0)); }
    /// Parses a string of '0'/'1' characters.
    static Rumor parse(std::string_view text);

    std::size_t size() const noexcept { return bits_.size(); }
    bool bit(PropIndex k) const { return bits_.at(k) != 0; }
    void set(PropIndex k, bool value) { bits_.at(k) = value ? 1 : 0; }
    void flip(PropIndex k) { bits_.at(k) ^= 1; }
    const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
    std::string str() const;

    auto operator<=>(const Rumor&) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

struct Desire {
    PropositionSet gamma_plus;
    PropositionSet gamma_minus;

    std::size_t considerable() const noexcept { return gamma_plus.size() + gamma_minus.size(); }
    bool operator==(const Desire&) const = default;
};

/// Row of the membership matrix: +1 wished true, -1 wished false, 0 inconsiderable.
using DesireVector = std::vector<int>;

/// Throws ConfigError when an index is >= |P| or the two sets overlap.
DesireVector desire_vector(const Desire& desire, const PropositionSpace& space);
/// Inverse of desire_vector; entries outside {-1,0,1} are rejected.
Desire desire_from_vector(const DesireVector& vec);

struct BoxEntry {
    Rumor rumor;
    int spreader_id = 0;
    double weight = 1.0;

    bool operator==(const BoxEntry&) const = default;
};

/// Received versions of the rumor. Bit-identical rumors are stored once.
class RumorBox {
public:
    bool empty() const noexcept { return entries_.empty(); }
    std::size_t size() const noexcept { return entries_.size(); }
    const std::vector<BoxEntry>& entries() const noexcept { return entries_; }
    bool contains(const Rumor& rumor) const;
    /// Appends unless an identical rumor is already held. Returns true on insert.
    bool put(BoxEntry entry);
    void clear() noexcept { entries_.clear(); }

    bool operator==(const RumorBox&) const = default;

private:
    std::vector<BoxEntry> entries_;
};

struct Agent {
    int id = 0;
    Desire desire;
    double veracity = 0.5;
    double accept_threshold = 0.5;
    RumorBox box;
    std::optional<Rumor> last_promoted;

    bool operator==(const Agent&) const = default;
};

/// Square trust matrix; at(a, s) is the trust receiver a places in spreader s.
class TrustMatrix {
public:
    TrustMatrix() = default;
    explicit TrustMatrix(std::size_t n, double off_diagonal = 1.0);
    explicit TrustMatrix(std::vector<std::vector<double>> rows);

    std::size_t size() const noexcept { return n_; }
    double at(std::size_t receiver, std::size_t spreader) const { return values_.at(receiver * n_ + spreader); }
    void set(std::size_t receiver, std::size_t spreader, double v) { values_.at(receiver * n_ + spreader) = v; }
    std::vector<std::vector<double>> rows() const;

    bool operator==(const TrustMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> values_;
};

struct Colony {
    PropositionSpace space;
    std::vector<Agent> agents;
    TrustMatrix trust;
    std::set<int> observers;
    Rumor initial_observation;
    double attractiveness = 0.0;

    /// Position of the agent with the given id, if any.
    std::optional<std::size_t> index_of(int agent_id) const;
};

struct TrustTriple {
    int a = 0, b = 0, c = 0;
    double direct = 0.0;    // tau(a,b)
    double indirect = 0.0;  // tau(a,c) * tau(c,b)

    bool operator==(const TrustTriple&) const = default;
};

struct ValidationReport {
    /// Structural problems; a colony with any of these cannot be simulated.
    std::vector<std::string> errors;
    /// Agents whose self-trust differs from 1.
    std::vector<int> diagonal_violations;
    /// Triples breaking tau(a,b) >= tau(a,c) * tau(c,b). Reported, not fatal.
    std::vector<TrustTriple> triangle_violations;
    /// (agent id, proposition index) pairs present in both desire sets.
    std::vector<std::pair<int, PropIndex>> desire_overlaps;

    bool ok() const noexcept { return errors.empty() && diagonal_violations.empty() && desire_overlaps.empty(); }
    bool clean() const noexcept { return ok() && triangle_violations.empty(); }
    std::string describe() const;
};

ValidationReport validate_colony(const Colony& colony);

/// Throws ConfigError carrying the first error of validate_colony.
void require_valid(const Colony& colony);

}  // namespace rumorsim
