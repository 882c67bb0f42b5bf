#pragma once

#include "json.hpp"

#include "anonq/netsim.hpp"

namespace anonq::netsim {

// Tree wire format: node list with round, statuses and path probability;
// edges carry the joint outcome vector (-1 for processors that did not
// measure) and the conditional branch probability.
nlohmann::json tree_to_json(const ExecutionTree& tree);

nlohmann::json config_to_json(const NetworkConfig& config);

}  // namespace anonq::netsim
