#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "anonq/netsim.hpp"
#include "anonq/protocols.hpp"
#include "anonq/symmetry.hpp"

namespace anonq::verify {

struct Violation {
    std::size_t leaf = 0;
    std::string reason;
};

struct CorrectnessReport {
    // False when the tree was truncated by the node budget; the remaining
    // verdicts are then inconclusive rather than false.
    bool conclusive = true;
    bool terminating = false;
    bool partially_correct = false;
    bool totally_correct = false;
    std::vector<Violation> violations;
    int rounds = 0;    // deepest leaf
    int messages = 0;  // largest root-to-leaf message count
};

// Judges every leaf of the tree against the task predicate. Terminal leaves
// must satisfy it (Byzantine processors are excluded from consensus
// unanimity); cutoff leaves break termination.
CorrectnessReport check_total_correctness(const netsim::ExecutionTree& tree,
                                          const protocols::OutcomeSpec& outcome);

struct FairnessReport {
    std::vector<double> leader_probability;  // per processor
    double max_deviation = 0.0;              // from 1/n
};

// Sums leaf probabilities by elected processor. Requires a leader-election
// tree whose terminal leaves each elect exactly one leader.
FairnessReport check_fairness(const netsim::ExecutionTree& tree);

struct EntanglementReport {
    bool product = false;
    std::vector<double> purities;               // per-processor RDM purity
    std::vector<std::vector<cplx>> factors;     // per-processor, when product
};

// Full-product test across processor blocks via reduced-density-matrix
// purity; purity 1 everywhere factorizes the state.
EntanglementReport check_entanglement_required(const StateVector& state);

enum class Family { w_family, ghz_family, other };

std::string family_name(Family family);

struct ClassificationResult {
    Family family = Family::other;
    std::optional<LocalBasis> basis;  // basis achieving the form, when found
    double residual = 1.0;            // off-pattern norm in that basis
    std::string phase;                // "computational" | "grid" | "random"
    std::size_t bases_examined = 0;
};

// Structural membership in the W family (m = 1: support on the strings where
// exactly one block differs from the rest) or the GHZ family (support on the
// diagonal label tuples), first in the computational basis, then searched
// over the grid/random budget. A family is claimed only when the residual is
// at most tol::residual.
ClassificationResult classify_state(const StateVector& state,
                                    const symmetry::SearchBudget& budget = {});

struct ImpossibilityReport {
    protocols::Task task = protocols::Task::leader_election;
    std::set<int> allowed_k;
    std::optional<symmetry::SymmetricMoveWitness> witness;
    std::optional<symmetry::SymmetricPath> path;  // realized in a measurement tree
    std::size_t path_tree_leaves = 0;
};

// Bundles the forbidden-move witness with, when a witness exists at m = 1,
// the concrete k-symmetric path realized by running the task's one-round
// measurement protocol on the state. leader_labels restricts the shared
// label for generalized (m > 1) leader election.
ImpossibilityReport impossibility_report(
    const StateVector& state, protocols::Task task, const symmetry::SearchBudget& budget = {},
    const std::optional<std::set<std::size_t>>& leader_labels = std::nullopt);

nlohmann::json correctness_to_json(const CorrectnessReport& report);
nlohmann::json fairness_to_json(const FairnessReport& report);
nlohmann::json entanglement_to_json(const EntanglementReport& report);
nlohmann::json classification_to_json(const ClassificationResult& result);
nlohmann::json impossibility_to_json(const ImpossibilityReport& report);

// Test corpus of anonymous states: every Perm-closure orbit for n <= max_n
// (m = 1), the two families at several sizes, and seeded random symmetrized
// states.
struct CorpusEntry {
    std::string name;
    StateVector state;
};

std::vector<CorpusEntry> build_corpus(int max_n = 5, int random_count = 100,
                                      std::uint64_t seed = defaults::seed);

}  // namespace anonq::verify
