#include "anonq/tree_io.hpp"

namespace anonq::netsim {

nlohmann::json config_to_json(const NetworkConfig& config) {
    nlohmann::json byz = nlohmann::json::array();
    for (int p : config.byzantine) byz.push_back(p);
    return {{"n", config.layout.n_processors},
            {"m", config.layout.qubits_per_processor},
            {"topology", topology_name(config.topology)},
            {"max_rounds", config.max_rounds},
            {"byzantine", std::move(byz)},
            {"strategy", config.strategy.name()},
            {"node_budget", config.node_budget}};
}

nlohmann::json tree_to_json(const ExecutionTree& tree) {
    nlohmann::json nodes = nlohmann::json::array();
    for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
        const TreeNode& node = tree.nodes[id];
        nlohmann::json statuses = nlohmann::json::array();
        for (const auto& cs : node.config.classical) statuses.push_back(cs.status);
        nlohmann::json edges = nlohmann::json::array();
        for (const TreeEdge& edge : node.edges) {
            edges.push_back({{"outcomes", edge.outcomes},
                             {"probability", edge.probability},
                             {"child", edge.child}});
        }
        nlohmann::json jn = {{"id", id},
                             {"round", node.config.round},
                             {"statuses", std::move(statuses)},
                             {"probability", node.path_probability},
                             {"messages_on_path", node.messages_on_path},
                             {"edges", std::move(edges)}};
        switch (node.leaf) {
            case LeafKind::terminal: jn["leaf"] = "terminal"; break;
            case LeafKind::cutoff: jn["leaf"] = "cutoff"; break;
            case LeafKind::internal: jn["leaf"] = nullptr; break;
        }
        if (node.parent != SIZE_MAX) jn["parent"] = node.parent;
        nodes.push_back(std::move(jn));
    }
    return {{"config", config_to_json(tree.config)},
            {"budget_exceeded", tree.budget_exceeded},
            {"nodes", std::move(nodes)}};
}

}  // namespace anonq::netsim
