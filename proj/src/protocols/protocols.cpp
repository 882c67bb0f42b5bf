#include "anonq/protocols.hpp"

#include <cmath>
#include <numbers>

namespace anonq::protocols {

using netsim::ClassicalState;
using netsim::Inbox;
using netsim::MeasureAction;
using netsim::PostResult;
using netsim::RoundAction;
using netsim::halt_action;

std::string task_name(Task task) {
    return task == Task::leader_election ? "leader_election" : "consensus";
}

Task parse_task(const std::string& name) {
    if (name == "leader_election") return Task::leader_election;
    if (name == "consensus") return Task::consensus;
    throw InvalidParameter("unknown task: " + name);
}

namespace {

std::vector<int> all_qubits(int m) {
    std::vector<int> qs(static_cast<std::size_t>(m));
    for (int q = 0; q < m; ++q) qs[static_cast<std::size_t>(q)] = q;
    return qs;
}

std::string decided(long outcome) { return "decided(" + std::to_string(outcome) + ")"; }

ProtocolSpec qle_w_variant(int n, long leader_outcome, std::string name,
                           std::function<StateVector()> paired) {
    if (n < 2) {
        throw InvalidParameter(name + " requires n >= 2");
    }
    const ProjectorSet computational = ProjectorSet::from_basis(LocalBasis::computational(1));
    netsim::LocalProtocol protocol;
    protocol.name = std::move(name);
    protocol.round = [leader_outcome, computational](int round, const ClassicalState&,
                                                     const Inbox&) -> RoundAction {
        if (round > 1) return halt_action();
        RoundAction action;
        action.measurement = MeasureAction{{0}, computational};
        action.post = [leader_outcome](const ClassicalState& cs, long outcome,
                                       const Inbox&) -> PostResult {
            ClassicalState next = cs;
            next.status = (outcome == leader_outcome) ? "leader" : "follower";
            return {next, std::nullopt};
        };
        return action;
    };
    OutcomeSpec outcome{Task::leader_election,
                        {"wait", "leader", "follower"},
                        {static_cast<std::size_t>(leader_outcome)},
                        2};
    return {std::move(protocol), std::move(outcome), std::move(paired)};
}

}  // namespace

ProtocolSpec qle_w(int n) {
    return qle_w_variant(n, 1, "qle_w", [n] { return make_w(n); });
}

ProtocolSpec qle_w_complement(int n) {
    return qle_w_variant(n, 0, "qle_w_complement", [n] { return make_w_complement(n); });
}

ProtocolSpec qle_generalized(int n, int m, const std::set<std::size_t>& leader_labels,
                             const LocalBasis& basis) {
    if (n < 2 || m < 1) {
        throw InvalidParameter("qle_generalized requires n >= 2 and m >= 1");
    }
    const std::size_t d = std::size_t{1} << m;
    if (basis.dim() != d) {
        throw InvalidParameter("basis dimension does not match m");
    }
    if (leader_labels.empty() || leader_labels.size() >= d) {
        throw InvalidFamily("leader labels must be a nonempty proper subset of the outcomes");
    }
    for (std::size_t l : leader_labels) {
        if (l >= d) throw InvalidFamily("leader label out of range");
    }
    const ProjectorSet projectors = ProjectorSet::from_basis(basis);
    netsim::LocalProtocol protocol;
    protocol.name = "qle_gen";
    protocol.round = [m, leader_labels, projectors](int round, const ClassicalState&,
                                                    const Inbox&) -> RoundAction {
        if (round > 1) return halt_action();
        RoundAction action;
        action.measurement = MeasureAction{all_qubits(m), projectors};
        action.post = [leader_labels](const ClassicalState& cs, long outcome,
                                      const Inbox&) -> PostResult {
            ClassicalState next = cs;
            next.status = leader_labels.count(static_cast<std::size_t>(outcome)) ? "leader"
                                                                                 : "follower";
            return {next, std::nullopt};
        };
        return action;
    };
    OutcomeSpec outcome{Task::leader_election,
                        {"wait", "leader", "follower"},
                        leader_labels,
                        static_cast<int>(d)};
    // Default resource: leader on the smallest leader label, followers on the
    // smallest non-leader label.
    const std::size_t leader = *leader_labels.begin();
    std::size_t follower = 0;
    while (leader_labels.count(follower)) ++follower;
    auto paired = [n, m, leader, follower, basis]() {
        return make_generalized_w(
            leader, std::vector<std::size_t>(static_cast<std::size_t>(n - 1), follower), basis,
            ProcessorLayout(n, m));
    };
    return {std::move(protocol), std::move(outcome), std::move(paired)};
}

ProtocolSpec qdc_ghz(int n) {
    if (n < 2) {
        throw InvalidParameter("qdc_ghz requires n >= 2");
    }
    const ProjectorSet computational = ProjectorSet::from_basis(LocalBasis::computational(1));
    netsim::LocalProtocol protocol;
    protocol.name = "qdc_ghz";
    protocol.round = [computational](int round, const ClassicalState&,
                                     const Inbox&) -> RoundAction {
        if (round > 1) return halt_action();
        RoundAction action;
        action.measurement = MeasureAction{{0}, computational};
        action.post = [](const ClassicalState& cs, long outcome, const Inbox&) -> PostResult {
            ClassicalState next = cs;
            next.status = decided(outcome);
            return {next, std::nullopt};
        };
        return action;
    };
    OutcomeSpec outcome{Task::consensus, {"wait", "decided(0)", "decided(1)"}, {}, 2};
    return {std::move(protocol), std::move(outcome), [n] { return make_ghz(n); }};
}

ProtocolSpec qdc_generalized(int n, int m, const LocalBasis& basis) {
    if (n < 2 || m < 1) {
        throw InvalidParameter("qdc_generalized requires n >= 2 and m >= 1");
    }
    const std::size_t d = std::size_t{1} << m;
    if (basis.dim() != d) {
        throw InvalidParameter("basis dimension does not match m");
    }
    const ProjectorSet projectors = ProjectorSet::from_basis(basis);
    netsim::LocalProtocol protocol;
    protocol.name = "qdc_gen";
    protocol.round = [m, projectors](int round, const ClassicalState&,
                                     const Inbox&) -> RoundAction {
        if (round > 1) return halt_action();
        RoundAction action;
        action.measurement = MeasureAction{all_qubits(m), projectors};
        action.post = [](const ClassicalState& cs, long outcome, const Inbox&) -> PostResult {
            ClassicalState next = cs;
            next.status = decided(outcome);
            return {next, std::nullopt};
        };
        return action;
    };
    std::vector<std::string> alphabet{"wait"};
    for (std::size_t i = 0; i < d; ++i) alphabet.push_back(decided(static_cast<long>(i)));
    OutcomeSpec outcome{Task::consensus, std::move(alphabet), {}, static_cast<int>(d)};
    auto paired = [n, m, d, basis]() {
        return make_generalized_ghz(std::vector<cplx>(d, cplx{1.0, 0.0}), basis,
                                    ProcessorLayout(n, m));
    };
    return {std::move(protocol), std::move(outcome), std::move(paired)};
}

ProtocolSpec candidate_voter(int n, netsim::Topology topology) {
    if (n < 3 || n % 2 == 0) {
        throw InvalidParameter("candidate_voter requires an odd number of processors n >= 3");
    }
    const ProjectorSet computational = ProjectorSet::from_basis(LocalBasis::computational(1));
    CMat hadamard(2, 2);
    const double r = 1.0 / std::numbers::sqrt2;
    hadamard.at(0, 0) = {r, 0.0};
    hadamard.at(0, 1) = {r, 0.0};
    hadamard.at(1, 0) = {r, 0.0};
    hadamard.at(1, 1) = {-r, 0.0};

    netsim::LocalProtocol protocol;
    protocol.name = "candidate_voter";
    protocol.message_alphabet =
        topology == netsim::Topology::broadcast ? std::vector<std::string>{"0", "1"}
                                                : std::vector<std::string>{"C", "S"};

    auto round1 = [computational]() -> RoundAction {
        RoundAction action;
        action.measurement = MeasureAction{{0}, computational};
        action.post = [](const ClassicalState& cs, long outcome, const Inbox&) -> PostResult {
            ClassicalState next = cs;
            next.status = outcome == 1 ? "candidate" : "voter";
            return {next, std::nullopt};
        };
        return action;
    };

    if (topology == netsim::Topology::broadcast) {
        protocol.round = [round1, hadamard, computational](
                             int round, const ClassicalState& cs, const Inbox&) -> RoundAction {
            if (round == 1) return round1();
            if (round == 2 && cs.status == "voter") {
                // Step 4 of the listing: b := measure H(q); broadcast b.
                RoundAction action;
                action.unitary = netsim::QuantumAction{0, hadamard};
                action.measurement = MeasureAction{{0}, computational};
                action.post = [](const ClassicalState& state, long outcome,
                                 const Inbox&) -> PostResult {
                    ClassicalState next = state;
                    next.vars["vote"] = std::to_string(outcome);
                    return {next, std::to_string(outcome)};
                };
                return action;
            }
            if (round == 2) {
                // Candidates have no step this round; they only wait for the
                // votes (which the listing gives them no way to use).
                RoundAction action;
                action.post = [](const ClassicalState& state, long, const Inbox&) -> PostResult {
                    return {state, std::nullopt};
                };
                return action;
            }
            return halt_action();
        };
    } else {
        protocol.round = [round1, n](int round, const ClassicalState&,
                                     const Inbox&) -> RoundAction {
            if (round == 1) return round1();
            if (round == 2) {
                RoundAction action;
                action.post = [](const ClassicalState& state, long, const Inbox&) -> PostResult {
                    if (state.status == "candidate") {
                        return {state, std::string("C")};
                    }
                    return {state, std::nullopt};
                };
                return action;
            }
            // Everyone keeps relaying until the configuration is globally
            // quiescent; followers must stay live for the suppression token.
            RoundAction action;
            action.post = [round, n](const ClassicalState& state, long,
                                     const Inbox& in) -> PostResult {
                ClassicalState next = state;
                const bool has_c = in.count("C") > 0;
                const bool has_s = in.count("S") > 0;
                if (state.status == "candidate") {
                    if (has_s) {
                        // The leader's suppression token: concede.
                        next.status = "follower";
                        return {next, std::nullopt};
                    }
                    if (has_c) {
                        // Tokens travel one hop per round, so this one has
                        // covered round-2 hops. Odd n keeps the race strict.
                        const int travelled = round - 2;
                        if (travelled == n - travelled) {
                            throw Error("candidate token tie on an odd ring");
                        }
                        if (travelled < n - travelled) {
                            next.status = "leader";
                            return {next, std::string("S")};
                        }
                        // Stale token from the race already lost; await S.
                        return {next, std::nullopt};
                    }
                    return {next, std::nullopt};
                }
                if (state.status == "leader") {
                    return {next, std::nullopt};
                }
                // Voters and retired voters relay tokens one hop per round.
                if (has_s) {
                    next.status = "follower";
                    return {next, std::string("S")};
                }
                if (has_c) {
                    next.status = "follower";
                    return {next, std::string("C")};
                }
                return {next, std::nullopt};
            };
            return action;
        };
    }

    OutcomeSpec outcome{Task::leader_election,
                        {"wait", "candidate", "voter", "leader", "follower"},
                        {1},
                        2};
    auto paired = [n]() {
        std::string pattern(static_cast<std::size_t>(n), '0');
        pattern[0] = '1';
        pattern[1] = '1';
        return make_perm_closure(pattern, ProcessorLayout(n, 1));
    };
    return {std::move(protocol), std::move(outcome), std::move(paired)};
}

}  // namespace anonq::protocols
