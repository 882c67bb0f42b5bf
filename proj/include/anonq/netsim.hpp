#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "anonq/basis.hpp"
#include "anonq/ops.hpp"
#include "anonq/state.hpp"

namespace anonq::netsim {

enum class Topology { broadcast, directed_ring };

std::string topology_name(Topology t);
Topology parse_topology(const std::string& name);

// Deterministic message-forging rules for Byzantine processors.
struct ByzantineStrategy {
    enum class Kind { silent, constant, flip };
    Kind kind = Kind::silent;
    std::string value;  // payload for constant

    // "silent" | "flip" | "constant:<payload>"
    static ByzantineStrategy parse(const std::string& spec);
    std::string name() const;

    std::optional<std::string> forge(const std::optional<std::string>& honest) const;
};

struct NetworkConfig {
    ProcessorLayout layout;
    Topology topology = Topology::broadcast;
    int max_rounds = defaults::max_rounds;
    std::set<int> byzantine;
    ByzantineStrategy strategy;
    // Waives the anonymity precondition on the initial state (used to
    // demonstrate failures on non-anonymous resources).
    bool allow_non_anonymous = false;
    std::size_t node_budget = defaults::node_budget;
};

// Marks processors Byzantine under a strategy spec; validates indices and the
// strategy name.
NetworkConfig inject_byzantine(NetworkConfig config, const std::set<int>& processors,
                               const std::string& strategy_spec);

// Received messages carry no sender identity.
using Inbox = std::multiset<std::string>;

// Message delivery. outgoing[i] is the message sent by processor i+1 (if
// any). Broadcast: every processor receives every message as one multiset.
// Directed ring: processor p's message reaches only its clockwise neighbor
// p%n + 1.
std::vector<Inbox> deliver(Topology topology, int n,
                           const std::vector<std::optional<std::string>>& outgoing);

struct ClassicalState {
    std::string status = "wait";
    std::map<std::string, std::string> vars;

    bool operator==(const ClassicalState&) const = default;
};

bool is_terminal_status(const std::string& status);

struct PostResult {
    ClassicalState state;
    std::optional<std::string> message;
};

// Local unitary (optionally preceded by ancilla allocation; the operator acts
// on the grown block).
struct QuantumAction {
    int ancillas = 0;
    CMat op;
};

// Projective measurement of a subset of the local qubits (0-based within the
// block, 0 = most significant). The projector set lives on the 2^|qubits|
// dimensional subspace and is embedded by the engine.
struct MeasureAction {
    std::vector<int> qubits;
    ProjectorSet projectors;
};

// One round of the per-processor program. halt means "this processor never
// acts again, regardless of round or inbox". outcome is -1 in post when the
// round had no measurement.
struct RoundAction {
    bool halt = false;
    std::optional<QuantumAction> unitary;
    std::optional<MeasureAction> measurement;
    std::function<PostResult(const ClassicalState&, long, const Inbox&)> post;
};

RoundAction halt_action();

// One identical program instantiated at every processor. The round function
// and post-processing must be pure and deterministic.
struct LocalProtocol {
    std::string name;
    std::function<RoundAction(int, const ClassicalState&, const Inbox&)> round;
    std::vector<std::string> message_alphabet;
};

struct TransitMessage {
    int sender = 0;
    std::string body;
    bool byzantine_origin = false;

    auto operator<=>(const TransitMessage&) const = default;
};

struct GlobalConfiguration {
    StateVector quantum;
    std::vector<ClassicalState> classical;
    std::vector<bool> halted;
    std::vector<TransitMessage> in_transit;
    int round = 0;  // rounds completed
};

enum class LeafKind { internal, terminal, cutoff };

struct TreeEdge {
    std::vector<long> outcomes;  // per processor; -1 = did not measure
    double probability = 0.0;
    std::size_t child = 0;
};

struct TreeNode {
    GlobalConfiguration config;
    std::size_t parent = SIZE_MAX;
    double path_probability = 1.0;
    int messages_on_path = 0;
    LeafKind leaf = LeafKind::internal;
    std::vector<TreeEdge> edges;
};

struct ExecutionTree {
    NetworkConfig config;
    std::vector<TreeNode> nodes;
    bool budget_exceeded = false;

    std::vector<std::size_t> leaves() const;
    int max_depth() const;
    int max_messages_on_path() const;
};

// Breadth-first expansion of every joint measurement outcome above the prune
// threshold. Branches stop at terminal configurations (all honest statuses
// terminal and no honest message in transit, or every honest processor
// halted) or at max_rounds (flagged cutoff).
ExecutionTree run_full_tree(const LocalProtocol& protocol, const StateVector& initial,
                            const NetworkConfig& config);

struct SampleResult {
    GlobalConfiguration leaf;
    LeafKind kind = LeafKind::cutoff;
    std::vector<std::string> transcript;  // one line per round
    int messages = 0;
};

// Monte Carlo counterpart of run_full_tree; byte-identical output for a fixed
// seed.
SampleResult sample_run(const LocalProtocol& protocol, const StateVector& initial,
                        const NetworkConfig& config, std::uint64_t seed);

bool configuration_terminal(const GlobalConfiguration& config, const NetworkConfig& net);

}  // namespace anonq::netsim
