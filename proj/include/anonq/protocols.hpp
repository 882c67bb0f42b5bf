#pragma once

#include <functional>
#include <set>
#include <string>

#include "anonq/basis.hpp"
#include "anonq/netsim.hpp"
#include "anonq/states.hpp"

namespace anonq::protocols {

enum class Task { leader_election, consensus };

std::string task_name(Task task);
Task parse_task(const std::string& name);

// What a terminal configuration must look like for the task: leader election
// needs exactly one leader and followers everywhere else; consensus needs
// every non-Byzantine processor decided on one identical value.
struct OutcomeSpec {
    Task task = Task::leader_election;
    std::vector<std::string> status_alphabet;
    std::set<std::size_t> leader_labels;  // generalized QLE: outcomes conferring leadership
    int local_dim = 2;
};

struct ProtocolSpec {
    netsim::LocalProtocol protocol;
    OutcomeSpec outcome;
    // The entanglement resource the protocol is designed for.
    std::function<StateVector()> paired_state;
};

// Measure the own qubit; 1 elects, 0 follows. One round, no messages.
ProtocolSpec qle_w(int n);

// Complement variant: the processor measuring 0 becomes the leader. Pairs
// with the complement of W_n.
ProtocolSpec qle_w_complement(int n);

// Measure all m local qubits in the given basis; outcomes in leader_labels
// elect. leader_labels must be a nonempty proper subset of the labels.
ProtocolSpec qle_generalized(int n, int m, const std::set<std::size_t>& leader_labels,
                             const LocalBasis& basis);

// Measure the own qubit and decide on the outcome. One round, no messages.
ProtocolSpec qdc_ghz(int n);

// 2^m-valued consensus: measure all m local qubits in the given basis and
// decide on the outcome index.
ProtocolSpec qdc_generalized(int n, int m, const LocalBasis& basis);

// The two-candidate election on W_{2,n-2} (n odd). On broadcast this is the
// four-step listing (voters Hadamard-measure and broadcast their vote; no
// further step can tell the candidates apart). On the directed ring the
// candidates race tokens clockwise instead: voters forward a candidate token
// and retire as followers, the first candidate to receive one (known from the
// round number, since tokens travel one hop per round and n is odd) proclaims
// itself leader and circulates a suppression token that converts the losing
// candidate.
ProtocolSpec candidate_voter(int n, netsim::Topology topology);

}  // namespace anonq::protocols
