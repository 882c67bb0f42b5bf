#pragma once

#include <optional>
#include <set>
#include <vector>

#include "json.hpp"

#include "anonq/basis_search.hpp"
#include "anonq/netsim.hpp"
#include "anonq/state.hpp"

namespace anonq::symmetry {

// Certificate that k designated processors can share a basis label the others
// avoid, in one concrete basis: the expansion coefficient of
//   phi_l^{(x)k} (x) phi_{j_{k+1}} (x) ... (x) phi_{j_n}   (all j_i != l)
// is nonzero there.
struct SymmetricMoveWitness {
    int k = 0;
    std::vector<int> processors;        // ascending, 1-based
    LocalBasis basis;
    std::size_t l = 0;
    std::vector<std::size_t> followers; // labels of the other processors, ascending processor order
    cplx coefficient;
};

// A basis in which no qualifying coefficient survives: by the coefficient
// criterion this conclusively rules the move out.
struct BasisRefutation {
    LocalBasis basis;
    double max_violating_magnitude = 0.0;
    std::string phase;  // "grid" | "random"
    std::size_t index = 0;
    std::uint64_t seed = 0;
};

struct MoveSearchVerdict {
    bool refuted = false;
    std::optional<BasisRefutation> refutation;
    std::size_t bases_examined = 0;
};

// Scans the state's coefficients in one product basis. Deterministic
// preference order: smallest l, then lexicographically smallest follower
// tuple. Returns absent when no qualifying coefficient exceeds tol::coeff.
std::optional<SymmetricMoveWitness> find_move_in_basis(const StateVector& state, int k,
                                                       const std::set<int>& processors,
                                                       const LocalBasis& basis);

// Searches for a refuting basis: first the deterministic rotation grid (plus
// the Fourier basis), then `trials` seeded random bases. Refutation is
// conclusive; exhausting the budget without one is evidence, not proof, that
// the move exists. The canonical processor set {1..k} is used (any k-subset
// is equivalent on anonymous states).
MoveSearchVerdict has_move_all_bases(const StateVector& state, int k,
                                     const SearchBudget& budget = {});

// Smallest forbidden-k witness for an anonymous state: scans the
// computational basis per forbidden k (ascending); absence there is already
// conclusive for that k, and a hit is confirmed against the full budget so a
// spurious single-basis coefficient is never reported. restrict_l limits the
// shared label to a subspace (generalized leader-election, m > 1).
std::optional<SymmetricMoveWitness> forbidden_move_witness(
    const StateVector& state, const std::set<int>& allowed_k,
    const SearchBudget& budget = {},
    const std::optional<std::set<std::size_t>>& restrict_l = std::nullopt);

struct SymmetricPath {
    std::vector<int> processors;               // the fixed k-set
    std::vector<std::size_t> nodes;            // root..leaf node ids
    std::vector<std::vector<long>> outcomes;   // per traversed edge
};

// Root-to-leaf path along which one fixed set of k processors obtains
// identical outcomes at every measurement round while the others differ from
// that shared value.
std::optional<SymmetricPath> find_symmetric_path(const netsim::ExecutionTree& tree, int k);

nlohmann::json witness_to_json(const SymmetricMoveWitness& witness);
nlohmann::json refutation_to_json(const BasisRefutation& refutation);
nlohmann::json basis_to_json(const LocalBasis& basis);

}  // namespace anonq::symmetry
