#include "anonq/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <sstream>

#include "anonq/kernels.hpp"

namespace anonq::netsim {

std::string topology_name(Topology t) {
    return t == Topology::broadcast ? "broadcast" : "directed_ring";
}

Topology parse_topology(const std::string& name) {
    if (name == "broadcast") return Topology::broadcast;
    if (name == "directed_ring" || name == "ring") return Topology::directed_ring;
    throw InvalidParameter("unknown topology: " + name);
}

ByzantineStrategy ByzantineStrategy::parse(const std::string& spec) {
    if (spec == "silent") return {Kind::silent, ""};
    if (spec == "flip") return {Kind::flip, ""};
    if (spec.rfind("constant:", 0) == 0) return {Kind::constant, spec.substr(9)};
    if (spec == "constant") return {Kind::constant, "junk"};
    throw InvalidParameter("unknown byzantine strategy: " + spec);
}

std::string ByzantineStrategy::name() const {
    switch (kind) {
        case Kind::silent: return "silent";
        case Kind::flip: return "flip";
        case Kind::constant: return "constant:" + value;
    }
    return "silent";
}

std::optional<std::string> ByzantineStrategy::forge(
    const std::optional<std::string>& honest) const {
    switch (kind) {
        case Kind::silent:
            return std::nullopt;
        case Kind::constant:
            return value;
        case Kind::flip: {
            if (!honest) return std::nullopt;
            std::string flipped = *honest;
            for (char& c : flipped) {
                if (c == '0') c = '1';
                else if (c == '1') c = '0';
            }
            return flipped;
        }
    }
    return std::nullopt;
}

NetworkConfig inject_byzantine(NetworkConfig config, const std::set<int>& processors,
                               const std::string& strategy_spec) {
    for (int p : processors) {
        if (p < 1 || p > config.layout.n_processors) {
            throw InvalidParameter("byzantine processor index out of range");
        }
    }
    config.byzantine = processors;
    config.strategy = ByzantineStrategy::parse(strategy_spec);
    return config;
}

std::vector<Inbox> deliver(Topology topology, int n,
                           const std::vector<std::optional<std::string>>& outgoing) {
    if (outgoing.size() != static_cast<std::size_t>(n)) {
        throw InvalidParameter("deliver needs one optional message per processor");
    }
    std::vector<Inbox> inboxes(static_cast<std::size_t>(n));
    if (topology == Topology::broadcast) {
        Inbox all;
        for (const auto& msg : outgoing) {
            if (msg) all.insert(*msg);
        }
        for (auto& inbox : inboxes) {
            inbox = all;
        }
    } else {
        for (int p = 1; p <= n; ++p) {
            const auto& msg = outgoing[static_cast<std::size_t>(p - 1)];
            if (msg) {
                const int neighbor = p % n + 1;  // clockwise
                inboxes[static_cast<std::size_t>(neighbor - 1)].insert(*msg);
            }
        }
    }
    return inboxes;
}

bool is_terminal_status(const std::string& status) {
    return status == "leader" || status == "follower" || status.rfind("decided", 0) == 0;
}

RoundAction halt_action() {
    RoundAction a;
    a.halt = true;
    return a;
}

bool configuration_terminal(const GlobalConfiguration& config, const NetworkConfig& net) {
    bool honest_in_transit = false;
    for (const auto& msg : config.in_transit) {
        if (!msg.byzantine_origin) honest_in_transit = true;
    }
    bool statuses_terminal = true;
    bool all_halted = true;
    for (int p = 1; p <= net.layout.n_processors; ++p) {
        if (net.byzantine.count(p)) continue;
        const auto& cs = config.classical[static_cast<std::size_t>(p - 1)];
        if (!is_terminal_status(cs.status)) statuses_terminal = false;
        if (!config.halted[static_cast<std::size_t>(p - 1)]) all_halted = false;
    }
    return (statuses_terminal && !honest_in_transit) || all_halted;
}

namespace {

// Projector over a subset of the block's qubits, embedded into the full
// block space (identity on the rest).
CMat embed_projector(const CMat& p, const std::vector<int>& qubits, int block_qubits) {
    const std::size_t d = std::size_t{1} << block_qubits;
    auto selected = [&](std::size_t x) {
        std::size_t s = 0;
        for (int q : qubits) {
            s = (s << 1) | ((x >> (block_qubits - 1 - q)) & 1);
        }
        return s;
    };
    auto rest = [&](std::size_t x) {
        std::size_t r = 0;
        for (int q = 0; q < block_qubits; ++q) {
            if (std::find(qubits.begin(), qubits.end(), q) != qubits.end()) continue;
            r = (r << 1) | ((x >> (block_qubits - 1 - q)) & 1);
        }
        return r;
    };
    CMat out(d, d);
    for (std::size_t x = 0; x < d; ++x) {
        for (std::size_t y = 0; y < d; ++y) {
            if (rest(x) == rest(y)) {
                out.at(x, y) = p.at(selected(x), selected(y));
            }
        }
    }
    return out;
}

struct Branch {
    std::vector<long> outcomes;
    double probability = 0.0;
    GlobalConfiguration config;
    int messages_sent = 0;
};

std::vector<Branch> expand_round(const GlobalConfiguration& cfg, const LocalProtocol& protocol,
                                 const NetworkConfig& net) {
    const int n = cfg.quantum.layout().n_processors;
    const int round = cfg.round + 1;

    // Receive: messages sent in the previous round.
    std::vector<std::optional<std::string>> sent(static_cast<std::size_t>(n));
    for (const auto& msg : cfg.in_transit) {
        sent[static_cast<std::size_t>(msg.sender - 1)] = msg.body;
    }
    const std::vector<Inbox> inboxes = deliver(net.topology, n, sent);

    // Local operations.
    std::vector<std::optional<RoundAction>> actions(static_cast<std::size_t>(n));
    std::vector<bool> halted = cfg.halted;
    int ancillas = 0;
    for (int p = 1; p <= n; ++p) {
        const std::size_t i = static_cast<std::size_t>(p - 1);
        if (halted[i]) continue;
        RoundAction action = protocol.round(round, cfg.classical[i], inboxes[i]);
        if (action.halt) {
            if (action.unitary || action.measurement) {
                throw InvalidInput("halt action must not carry quantum operations");
            }
            halted[i] = true;
            continue;
        }
        if (!action.post) {
            throw InvalidInput("non-halt round action requires a post-processing function");
        }
        if (action.unitary && action.unitary->ancillas > 0) {
            if (ancillas != 0 && ancillas != action.unitary->ancillas) {
                throw InvalidInput("ancilla allocation must be uniform across processors");
            }
            ancillas = action.unitary->ancillas;
        }
        actions[i] = std::move(action);
    }

    // Ancilla growth is uniform so the layout stays anonymous.
    StateVector state = cfg.quantum;
    if (ancillas > 0) {
        state = grow_blocks(state, ancillas);
    }
    const ProcessorLayout layout = state.layout();
    const int block_qubits = layout.qubits_per_processor;

    std::vector<cplx> amps = state.amplitudes();
    for (int p = 1; p <= n; ++p) {
        const std::size_t i = static_cast<std::size_t>(p - 1);
        if (!actions[i] || !actions[i]->unitary) continue;
        const CMat& u = actions[i]->unitary->op;
        if (!u.is_unitary()) {
            throw InvalidOperator("round unitary is not unitary");
        }
        apply_to_block(amps, layout, p, u);
    }

    // Joint measurement enumeration, lexicographic by (processor, outcome).
    struct Measurer {
        int processor;
        std::vector<CMat> projectors;  // embedded into the block space
    };
    std::vector<Measurer> measurers;
    for (int p = 1; p <= n; ++p) {
        const std::size_t i = static_cast<std::size_t>(p - 1);
        if (!actions[i] || !actions[i]->measurement) continue;
        const MeasureAction& ma = *actions[i]->measurement;
        std::vector<int> qubits = ma.qubits;
        if (qubits.empty() || !std::is_sorted(qubits.begin(), qubits.end()) ||
            std::adjacent_find(qubits.begin(), qubits.end()) != qubits.end()) {
            throw InvalidInput("measurement qubits must be distinct and ascending");
        }
        for (int q : qubits) {
            if (q < 0 || q >= block_qubits) {
                throw InvalidInput("measurement qubit out of range");
            }
        }
        if (ma.projectors.dim() != (std::size_t{1} << qubits.size())) {
            throw InvalidOperator("projector dimension does not match the measured qubits");
        }
        Measurer meas{p, {}};
        for (std::size_t j = 0; j < ma.projectors.size(); ++j) {
            meas.projectors.push_back(embed_projector(ma.projectors[j], qubits, block_qubits));
        }
        measurers.push_back(std::move(meas));
    }

    struct RawBranch {
        std::vector<long> outcomes;
        double probability;
        std::vector<cplx> amps;
    };
    std::vector<RawBranch> raw;
    if (measurers.empty()) {
        raw.push_back({std::vector<long>(static_cast<std::size_t>(n), -1), 1.0, amps});
    } else {
        std::vector<std::size_t> odometer(measurers.size(), 0);
        while (true) {
            std::vector<cplx> branch_amps = amps;
            for (std::size_t mi = 0; mi < measurers.size(); ++mi) {
                apply_to_block(branch_amps, layout, measurers[mi].processor,
                               measurers[mi].projectors[odometer[mi]]);
            }
            const double prob =
                kernels::active().norm_sq(branch_amps.data(), branch_amps.size());
            if (prob > tol::prune) {
                std::vector<long> outcomes(static_cast<std::size_t>(n), -1);
                for (std::size_t mi = 0; mi < measurers.size(); ++mi) {
                    outcomes[static_cast<std::size_t>(measurers[mi].processor - 1)] =
                        static_cast<long>(odometer[mi]);
                }
                raw.push_back({std::move(outcomes), prob, std::move(branch_amps)});
            }
            // Advance, last measurer fastest.
            std::size_t pos = measurers.size();
            while (pos > 0) {
                --pos;
                if (++odometer[pos] < measurers[pos].projectors.size()) break;
                odometer[pos] = 0;
                if (pos == 0) {
                    pos = SIZE_MAX;
                    break;
                }
            }
            if (pos == SIZE_MAX) break;
        }
    }

    // Classical post-processing, Byzantine forging, message collection.
    std::vector<Branch> branches;
    branches.reserve(raw.size());
    for (RawBranch& rb : raw) {
        Branch branch;
        branch.outcomes = rb.outcomes;
        branch.probability = rb.probability;
        GlobalConfiguration next;
        next.quantum = StateVector(layout, std::move(rb.amps));
        next.classical = cfg.classical;
        next.halted = halted;
        next.round = round;
        for (int p = 1; p <= n; ++p) {
            const std::size_t i = static_cast<std::size_t>(p - 1);
            std::optional<std::string> message;
            if (actions[i]) {
                PostResult result =
                    actions[i]->post(cfg.classical[i], branch.outcomes[i], inboxes[i]);
                next.classical[i] = std::move(result.state);
                message = std::move(result.message);
            }
            if (net.byzantine.count(p)) {
                message = net.strategy.forge(message);
            }
            if (message) {
                next.in_transit.push_back(
                    {p, *message, net.byzantine.count(p) > 0});
                ++branch.messages_sent;
            }
        }
        branch.config = std::move(next);
        branches.push_back(std::move(branch));
    }
    return branches;
}

GlobalConfiguration initial_configuration(const StateVector& initial,
                                          const NetworkConfig& config) {
    if (initial.layout() != config.layout) {
        throw InvalidInput("initial state layout does not match the network config");
    }
    if (!config.allow_non_anonymous) {
        const AnonymityResult anon = is_anonymous(initial);
        if (!anon.anonymous) {
            throw InvalidInput(
                "initial state is not anonymous (set allow_non_anonymous to waive)");
        }
    }
    GlobalConfiguration root;
    root.quantum = initial;
    root.classical.assign(static_cast<std::size_t>(config.layout.n_processors), {});
    root.halted.assign(static_cast<std::size_t>(config.layout.n_processors), false);
    root.round = 0;
    return root;
}

}  // namespace

std::vector<std::size_t> ExecutionTree::leaves() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].leaf != LeafKind::internal) out.push_back(i);
    }
    return out;
}

int ExecutionTree::max_depth() const {
    int depth = 0;
    for (const auto& node : nodes) {
        depth = std::max(depth, node.config.round);
    }
    return depth;
}

int ExecutionTree::max_messages_on_path() const {
    int msgs = 0;
    for (const auto& node : nodes) {
        msgs = std::max(msgs, node.messages_on_path);
    }
    return msgs;
}

ExecutionTree run_full_tree(const LocalProtocol& protocol, const StateVector& initial,
                            const NetworkConfig& config) {
    ExecutionTree tree;
    tree.config = config;
    tree.nodes.push_back(TreeNode{initial_configuration(initial, config), SIZE_MAX, 1.0, 0,
                                  LeafKind::internal, {}});
    std::deque<std::size_t> frontier{0};
    while (!frontier.empty()) {
        const std::size_t id = frontier.front();
        frontier.pop_front();
        if (configuration_terminal(tree.nodes[id].config, config)) {
            tree.nodes[id].leaf = LeafKind::terminal;
            continue;
        }
        if (tree.nodes[id].config.round >= config.max_rounds) {
            tree.nodes[id].leaf = LeafKind::cutoff;
            continue;
        }
        if (tree.nodes.size() >= config.node_budget) {
            tree.nodes[id].leaf = LeafKind::cutoff;
            tree.budget_exceeded = true;
            continue;
        }
        std::vector<Branch> branches = expand_round(tree.nodes[id].config, protocol, config);
        for (Branch& branch : branches) {
            const std::size_t child = tree.nodes.size();
            tree.nodes[id].edges.push_back(
                {branch.outcomes, branch.probability, child});
            tree.nodes.push_back(TreeNode{
                std::move(branch.config), id,
                tree.nodes[id].path_probability * branch.probability,
                tree.nodes[id].messages_on_path + branch.messages_sent,
                LeafKind::internal,
                {}});
            frontier.push_back(child);
        }
    }
    return tree;
}

namespace {

std::string format_transcript_line(int round, const std::vector<long>& outcomes,
                                   const std::vector<std::string>& sent_messages,
                                   const std::vector<ClassicalState>& classical) {
    std::ostringstream line;
    line << "round=" << round << " outcomes=[";
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (i) line << ",";
        if (outcomes[i] < 0) line << "-";
        else line << outcomes[i];
    }
    line << "] messages={";
    std::vector<std::string> sorted = sent_messages;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i) line << ",";
        line << sorted[i];
    }
    line << "} statuses=[";
    for (std::size_t i = 0; i < classical.size(); ++i) {
        if (i) line << ",";
        line << classical[i].status;
    }
    line << "]";
    return line.str();
}

}  // namespace

SampleResult sample_run(const LocalProtocol& protocol, const StateVector& initial,
                        const NetworkConfig& config, std::uint64_t seed) {
    SampleResult result;
    GlobalConfiguration cfg = initial_configuration(initial, config);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    while (true) {
        if (configuration_terminal(cfg, config)) {
            result.kind = LeafKind::terminal;
            break;
        }
        if (cfg.round >= config.max_rounds) {
            result.kind = LeafKind::cutoff;
            break;
        }
        std::vector<Branch> branches = expand_round(cfg, protocol, config);
        double total = 0.0;
        for (const Branch& b : branches) total += b.probability;
        const double draw = uniform(rng) * total;
        std::size_t pick = branches.size() - 1;
        double acc = 0.0;
        for (std::size_t i = 0; i < branches.size(); ++i) {
            acc += branches[i].probability;
            if (draw < acc) {
                pick = i;
                break;
            }
        }
        Branch& branch = branches[pick];
        std::vector<std::string> sent;
        for (const auto& msg : branch.config.in_transit) {
            sent.push_back(msg.body);
        }
        result.transcript.push_back(format_transcript_line(
            branch.config.round, branch.outcomes, sent, branch.config.classical));
        result.messages += branch.messages_sent;
        cfg = std::move(branch.config);
    }
    result.leaf = std::move(cfg);
    return result;
}

}  // namespace anonq::netsim
