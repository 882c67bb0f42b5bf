#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <numbers>

#include "anonq/netsim.hpp"
#include "anonq/protocols.hpp"
#include "anonq/states.hpp"
#include "anonq/tree_io.hpp"

using namespace anonq;
using namespace anonq::netsim;

namespace {

NetworkConfig config_for(int n, Topology topology = Topology::broadcast) {
    NetworkConfig config;
    config.layout = ProcessorLayout(n, 1);
    config.topology = topology;
    return config;
}

double edge_probability_sum(const TreeNode& node) {
    double total = 0.0;
    for (const TreeEdge& edge : node.edges) total += edge.probability;
    return total;
}

}  // namespace

TEST_CASE("deliver") {
    std::vector<std::optional<std::string>> outgoing(4);
    outgoing[0] = "a";
    outgoing[2] = "b";

    const auto broadcast = deliver(Topology::broadcast, 4, outgoing);
    for (const Inbox& inbox : broadcast) {
        CHECK(inbox == Inbox{"a", "b"});
    }

    std::vector<std::optional<std::string>> ring_out(4);
    ring_out[1] = "x";  // processor 2
    const auto ring = deliver(Topology::directed_ring, 4, ring_out);
    CHECK(ring[0].empty());
    CHECK(ring[1].empty());
    CHECK(ring[2] == Inbox{"x"});  // clockwise neighbor 3
    CHECK(ring[3].empty());

    // Ring wraps: processor 4's message reaches processor 1.
    std::vector<std::optional<std::string>> wrap_out(4);
    wrap_out[3] = "w";
    CHECK(deliver(Topology::directed_ring, 4, wrap_out)[0] == Inbox{"w"});
}

TEST_CASE("byzantine strategies") {
    CHECK(ByzantineStrategy::parse("silent").forge(std::string("m")) == std::nullopt);
    CHECK(*ByzantineStrategy::parse("constant:junk").forge(std::nullopt) == "junk");
    CHECK(*ByzantineStrategy::parse("flip").forge(std::string("010")) == "101");
    CHECK(ByzantineStrategy::parse("flip").forge(std::nullopt) == std::nullopt);
    CHECK_THROWS_AS(ByzantineStrategy::parse("garble"), InvalidParameter);

    NetworkConfig config = config_for(3);
    const NetworkConfig unchanged = inject_byzantine(config, {}, "silent");
    CHECK(unchanged.byzantine.empty());
    CHECK_THROWS_AS(inject_byzantine(config, {7}, "silent"), InvalidParameter);
}

TEST_CASE("run_full_tree on the one-round protocols") {
    const auto qle = protocols::qle_w(3);
    const ExecutionTree tree = run_full_tree(qle.protocol, make_w(3), config_for(3));
    const auto leaves = tree.leaves();
    REQUIRE(leaves.size() == 3);
    for (std::size_t id : leaves) {
        const TreeNode& leaf = tree.nodes[id];
        CHECK(leaf.leaf == LeafKind::terminal);
        CHECK(leaf.path_probability == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
        int leaders = 0;
        for (const auto& cs : leaf.config.classical) {
            if (cs.status == "leader") ++leaders;
        }
        CHECK(leaders == 1);
    }
    CHECK(tree.max_depth() == 1);
    CHECK(tree.max_messages_on_path() == 0);

    const auto qdc = protocols::qdc_ghz(4);
    const ExecutionTree g = run_full_tree(qdc.protocol, make_ghz(4), config_for(4));
    CHECK(g.leaves().size() == 2);

    // All-zeros input with the anonymity waiver: single terminal all-follower
    // leaf (nobody measures 1, so nobody leads).
    NetworkConfig waived = config_for(3);
    waived.allow_non_anonymous = true;
    const ExecutionTree z = run_full_tree(
        qle.protocol, StateVector::basis_state(ProcessorLayout(3, 1), 0), waived);
    REQUIRE(z.leaves().size() == 1);
    const TreeNode& only = z.nodes[z.leaves()[0]];
    CHECK(only.leaf == LeafKind::terminal);
    for (const auto& cs : only.config.classical) {
        CHECK(cs.status == "follower");
    }
}

TEST_CASE("engine preconditions") {
    const auto qle = protocols::qle_w(3);
    CHECK_THROWS_AS(run_full_tree(qle.protocol, make_w(4), config_for(3)), InvalidInput);
    CHECK_THROWS_AS(
        run_full_tree(qle.protocol, StateVector::basis_state(ProcessorLayout(3, 1), 1),
                      config_for(3)),
        InvalidInput);
}

TEST_CASE("node budget produces a flagged partial tree") {
    const auto cv = protocols::candidate_voter(5, Topology::directed_ring);
    NetworkConfig config = config_for(5, Topology::directed_ring);
    config.node_budget = 4;
    const ExecutionTree tree = run_full_tree(cv.protocol, cv.paired_state(), config);
    CHECK(tree.budget_exceeded);
    bool has_cutoff = false;
    for (std::size_t id : tree.leaves()) {
        if (tree.nodes[id].leaf == LeafKind::cutoff) has_cutoff = true;
    }
    CHECK(has_cutoff);
}

TEST_CASE("probability conservation at every expanded node") {
    const auto cv = protocols::candidate_voter(5, Topology::directed_ring);
    const ExecutionTree tree =
        run_full_tree(cv.protocol, cv.paired_state(), config_for(5, Topology::directed_ring));
    for (const TreeNode& node : tree.nodes) {
        if (node.edges.empty()) continue;
        CHECK(std::abs(edge_probability_sum(node) - 1.0) <= tol::prob_sum);
    }
}

TEST_CASE("full tree expansion is deterministic") {
    const auto cv = protocols::candidate_voter(3, Topology::directed_ring);
    const ExecutionTree a =
        run_full_tree(cv.protocol, cv.paired_state(), config_for(3, Topology::directed_ring));
    const ExecutionTree b =
        run_full_tree(cv.protocol, cv.paired_state(), config_for(3, Topology::directed_ring));
    CHECK(tree_to_json(a).dump() == tree_to_json(b).dump());
}

TEST_CASE("sample_run is deterministic for a fixed seed and matches tree stats") {
    const auto qle = protocols::qle_w(4);
    const StateVector w4 = make_w(4);
    const SampleResult first = sample_run(qle.protocol, w4, config_for(4), 7);
    const SampleResult second = sample_run(qle.protocol, w4, config_for(4), 7);
    CHECK(first.transcript == second.transcript);
    CHECK(first.kind == LeafKind::terminal);
    int leaders = 0;
    for (const auto& cs : first.leaf.classical) {
        if (cs.status == "leader") ++leaders;
    }
    CHECK(leaders == 1);

    const auto qdc = protocols::qdc_ghz(5);
    const SampleResult g = sample_run(qdc.protocol, make_ghz(5), config_for(5), 1);
    std::string value;
    for (const auto& cs : g.leaf.classical) {
        if (value.empty()) value = cs.status;
        CHECK(cs.status == value);
    }

    // Empirical leaf frequencies track the tree probabilities (5 sigma).
    const int samples = 2000;
    std::map<std::string, int> counts;
    for (int seed = 0; seed < samples; ++seed) {
        const SampleResult run = sample_run(qle.protocol, w4, config_for(4), seed);
        std::string key;
        for (const auto& cs : run.leaf.classical) key += cs.status[0];
        counts[key]++;
    }
    CHECK(counts.size() == 4);
    const double p = 0.25;
    const double sigma = std::sqrt(p * (1 - p) / samples);
    for (const auto& [key, count] : counts) {
        const double freq = static_cast<double>(count) / samples;
        CHECK(std::abs(freq - p) <= 5 * sigma);
    }
}

TEST_CASE("engine anonymity: permuting the initial state permutes the tree") {
    // Biased non-anonymous state, run under the waiver.
    std::vector<cplx> amps(8, cplx{0.0, 0.0});
    amps[4] = {std::sqrt(2.0 / 3.0), 0.0};  // |100>
    amps[2] = {std::sqrt(1.0 / 3.0), 0.0};  // |010>
    const StateVector biased(ProcessorLayout(3, 1), std::move(amps));

    NetworkConfig config = config_for(3);
    config.allow_non_anonymous = true;
    const auto qle = protocols::qle_w(3);
    const ExecutionTree tree = run_full_tree(qle.protocol, biased, config);

    const std::vector<int> perm{2, 3, 1};  // processor p's block moves to slot perm[p-1]
    const ExecutionTree permuted_tree =
        run_full_tree(qle.protocol, biased.permute_blocks(perm), config);

    // Leaf probabilities must match under the same relabeling of outcomes.
    std::map<std::vector<long>, double> original, relabeled;
    for (std::size_t id : tree.leaves()) {
        const TreeNode& leaf = tree.nodes[id];
        std::vector<long> outcomes = tree.nodes[leaf.parent].edges.front().outcomes;
        for (const TreeEdge& edge : tree.nodes[leaf.parent].edges) {
            if (edge.child == id) outcomes = edge.outcomes;
        }
        std::vector<long> moved(outcomes.size());
        for (std::size_t p = 0; p < outcomes.size(); ++p) {
            moved[static_cast<std::size_t>(perm[p] - 1)] = outcomes[p];
        }
        original[moved] = leaf.path_probability;
    }
    for (std::size_t id : permuted_tree.leaves()) {
        const TreeNode& leaf = permuted_tree.nodes[id];
        for (const TreeEdge& edge : permuted_tree.nodes[leaf.parent].edges) {
            if (edge.child == id) relabeled[edge.outcomes] = leaf.path_probability;
        }
    }
    REQUIRE(original.size() == relabeled.size());
    for (const auto& [outcomes, probability] : original) {
        REQUIRE(relabeled.count(outcomes) == 1);
        CHECK(relabeled[outcomes] == doctest::Approx(probability).epsilon(1e-12));
    }
}

TEST_CASE("byzantine messages do not block termination or alter qdc") {
    const auto qdc = protocols::qdc_ghz(4);
    const ExecutionTree honest = run_full_tree(qdc.protocol, make_ghz(4), config_for(4));

    for (const std::string strategy : {"constant:junk", "flip", "silent"}) {
        NetworkConfig config = inject_byzantine(config_for(4), {1, 2, 3}, strategy);
        const ExecutionTree tree = run_full_tree(qdc.protocol, make_ghz(4), config);
        const auto leaves = tree.leaves();
        REQUIRE(leaves.size() == honest.leaves().size());
        for (std::size_t i = 0; i < leaves.size(); ++i) {
            const TreeNode& leaf = tree.nodes[leaves[i]];
            const TreeNode& ref = honest.nodes[honest.leaves()[i]];
            CHECK(leaf.path_probability == doctest::Approx(ref.path_probability));
            // Honest processor 4 decides exactly its measured qubit value.
            CHECK(leaf.config.classical[3].status == ref.config.classical[3].status);
            CHECK(leaf.leaf == LeafKind::terminal);
        }
    }

    // qle_w sends no messages, so a silent byzantine changes nothing at all.
    const auto qle = protocols::qle_w(3);
    const ExecutionTree a = run_full_tree(qle.protocol, make_w(3), config_for(3));
    const ExecutionTree b = run_full_tree(
        qle.protocol, make_w(3), inject_byzantine(config_for(3), {1}, "silent"));
    CHECK(tree_to_json(a).at("nodes").dump() == tree_to_json(b).at("nodes").dump());
}

TEST_CASE("transcript line format") {
    const auto qle = protocols::qle_w(3);
    const SampleResult run = sample_run(qle.protocol, make_w(3), config_for(3), 3);
    REQUIRE(run.transcript.size() == 1);
    const std::string& line = run.transcript[0];
    CHECK(line.rfind("round=1 outcomes=[", 0) == 0);
    CHECK(line.find(" messages={} statuses=[") != std::string::npos);
    // One leader, two followers in some order.
    CHECK(line.find("leader") != std::string::npos);
    CHECK(line.find("follower") != std::string::npos);
}

TEST_CASE("ancilla growth keeps layouts uniform") {
    // One round: allocate an ancilla, copy the data qubit onto it with a
    // CNOT, then measure the ancilla. Behaves exactly like measuring the own
    // qubit of W_3 directly.
    CMat cnot(4, 4);
    cnot.at(0, 0) = {1.0, 0.0};
    cnot.at(1, 1) = {1.0, 0.0};
    cnot.at(2, 3) = {1.0, 0.0};
    cnot.at(3, 2) = {1.0, 0.0};
    const ProjectorSet computational = ProjectorSet::from_basis(LocalBasis::computational(1));
    LocalProtocol protocol;
    protocol.name = "ancilla_probe";
    protocol.round = [cnot, computational](int round, const ClassicalState&,
                                           const Inbox&) -> RoundAction {
        if (round > 1) return halt_action();
        RoundAction action;
        action.unitary = QuantumAction{1, cnot};
        action.measurement = MeasureAction{{1}, computational};  // the fresh qubit
        action.post = [](const ClassicalState& cs, long outcome, const Inbox&) -> PostResult {
            ClassicalState next = cs;
            next.status = outcome == 1 ? "leader" : "follower";
            return {next, std::nullopt};
        };
        return action;
    };
    const ExecutionTree tree = run_full_tree(protocol, make_w(3), config_for(3));
    REQUIRE(tree.leaves().size() == 3);
    for (std::size_t id : tree.leaves()) {
        const TreeNode& leaf = tree.nodes[id];
        CHECK(leaf.config.quantum.layout().qubits_per_processor == 2);
        CHECK(leaf.path_probability == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
        int leaders = 0;
        for (const auto& cs : leaf.config.classical) {
            if (cs.status == "leader") ++leaders;
        }
        CHECK(leaders == 1);
    }
}

TEST_CASE("tree json shape") {
    const auto qle = protocols::qle_w(2);
    const ExecutionTree tree = run_full_tree(qle.protocol, make_w(2), config_for(2));
    const nlohmann::json j = tree_to_json(tree);
    CHECK(j.at("config").at("topology") == "broadcast");
    CHECK(j.at("budget_exceeded").get<bool>() == false);
    REQUIRE(j.at("nodes").size() == 3);
    const auto& root = j.at("nodes")[0];
    CHECK(root.at("round").get<int>() == 0);
    CHECK(root.at("edges").size() == 2);
    CHECK(root.at("edges")[0].at("outcomes").is_array());
    CHECK(j.at("nodes")[1].at("leaf") == "terminal");
    CHECK(j.at("nodes")[1].at("statuses").is_array());
}
