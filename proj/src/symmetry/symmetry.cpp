#include "anonq/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "anonq/ops.hpp"

namespace anonq::symmetry {

namespace {

struct ScanResult {
    std::optional<SymmetricMoveWitness> witness;
    double max_magnitude = 0.0;
};

// Expansion coefficients of the state in the product basis B^{(x)n}:
// alpha = (B^dagger)^{(x)n} psi, as a raw vector indexed by label tuples.
std::vector<cplx> expansion_coefficients(const StateVector& state, const LocalBasis& basis) {
    std::vector<cplx> coeffs = state.amplitudes();
    apply_to_all_blocks(coeffs, state.layout(), basis.as_matrix().adjoint());
    return coeffs;
}

ScanResult scan_basis(const StateVector& state, int k, const std::vector<int>& processors,
                      const LocalBasis& basis,
                      const std::optional<std::set<std::size_t>>& restrict_l) {
    const ProcessorLayout& layout = state.layout();
    const int n = layout.n_processors;
    const std::size_t d = layout.local_dim();
    const std::vector<cplx> coeffs = expansion_coefficients(state, basis);

    std::vector<int> others;
    for (int p = 1; p <= n; ++p) {
        if (std::find(processors.begin(), processors.end(), p) == processors.end()) {
            others.push_back(p);
        }
    }

    ScanResult result;
    std::vector<std::size_t> digits(static_cast<std::size_t>(n));
    for (std::size_t l = 0; l < d; ++l) {
        if (restrict_l && !restrict_l->count(l)) continue;
        for (int p : processors) {
            digits[static_cast<std::size_t>(p - 1)] = l;
        }
        std::vector<std::size_t> allowed;
        for (std::size_t j = 0; j < d; ++j) {
            if (j != l) allowed.push_back(j);
        }
        if (others.empty()) {
            const cplx c = coeffs[layout.compose(digits)];
            result.max_magnitude = std::max(result.max_magnitude, std::abs(c));
            if (std::abs(c) > tol::coeff) {
                result.witness = SymmetricMoveWitness{k, processors, basis, l, {}, c};
                return result;
            }
            continue;
        }
        if (allowed.empty()) continue;  // d == 1 cannot host followers
        std::vector<std::size_t> odometer(others.size(), 0);
        while (true) {
            for (std::size_t i = 0; i < others.size(); ++i) {
                digits[static_cast<std::size_t>(others[i] - 1)] = allowed[odometer[i]];
            }
            const cplx c = coeffs[layout.compose(digits)];
            result.max_magnitude = std::max(result.max_magnitude, std::abs(c));
            if (std::abs(c) > tol::coeff) {
                std::vector<std::size_t> followers(others.size());
                for (std::size_t i = 0; i < others.size(); ++i) {
                    followers[i] = allowed[odometer[i]];
                }
                result.witness =
                    SymmetricMoveWitness{k, processors, basis, l, std::move(followers), c};
                return result;
            }
            std::size_t pos = others.size();
            bool done = false;
            while (pos > 0) {
                --pos;
                if (++odometer[pos] < allowed.size()) break;
                odometer[pos] = 0;
                if (pos == 0) {
                    done = true;
                    break;
                }
            }
            if (done) break;
        }
    }
    return result;
}

std::vector<int> validated_processor_list(const StateVector& state, int k,
                                          const std::set<int>& processors) {
    const int n = state.layout().n_processors;
    if (k < 1 || k > n) {
        throw InvalidParameter("k must satisfy 0 < k <= n");
    }
    if (processors.size() != static_cast<std::size_t>(k)) {
        throw InvalidParameter("processor set must have exactly k members");
    }
    for (int p : processors) {
        if (p < 1 || p > n) {
            throw InvalidParameter("processor index out of range");
        }
    }
    return {processors.begin(), processors.end()};
}

}  // namespace

std::optional<SymmetricMoveWitness> find_move_in_basis(const StateVector& state, int k,
                                                       const std::set<int>& processors,
                                                       const LocalBasis& basis) {
    const std::vector<int> procs = validated_processor_list(state, k, processors);
    if (basis.dim() != state.layout().local_dim()) {
        throw InvalidParameter("basis dimension does not match the layout");
    }
    return scan_basis(state, k, procs, basis, std::nullopt).witness;
}

MoveSearchVerdict has_move_all_bases(const StateVector& state, int k,
                                     const SearchBudget& budget) {
    if (budget.trials < 0) {
        throw InvalidParameter("trials must be non-negative");
    }
    const int m = state.layout().qubits_per_processor;
    std::set<int> procs;
    for (int p = 1; p <= k; ++p) procs.insert(p);
    const std::vector<int> proc_list = validated_processor_list(state, k, procs);

    const BasisGrid grid(m, budget.grid_resolution);
    MoveSearchVerdict verdict;

    const auto refuted_at = [&](const LocalBasis& basis) {
        return !scan_basis(state, k, proc_list, basis, std::nullopt).witness.has_value();
    };

    const auto grid_hit = first_index_where(grid.total(), [&](std::size_t i) {
        return refuted_at(grid.basis(i));
    });
    if (grid_hit) {
        const LocalBasis basis = grid.basis(*grid_hit);
        const double mag = scan_basis(state, k, proc_list, basis, std::nullopt).max_magnitude;
        verdict.refuted = true;
        verdict.refutation = BasisRefutation{basis, mag, "grid", *grid_hit, budget.seed};
        verdict.bases_examined = *grid_hit + 1;
        return verdict;
    }
    const auto random_hit =
        first_index_where(static_cast<std::size_t>(budget.trials), [&](std::size_t t) {
            return refuted_at(random_basis(m, budget.seed, static_cast<int>(t)));
        });
    if (random_hit) {
        const LocalBasis basis = random_basis(m, budget.seed, static_cast<int>(*random_hit));
        const double mag = scan_basis(state, k, proc_list, basis, std::nullopt).max_magnitude;
        verdict.refuted = true;
        verdict.refutation = BasisRefutation{basis, mag, "random", *random_hit, budget.seed};
        verdict.bases_examined = grid.total() + *random_hit + 1;
        return verdict;
    }
    verdict.refuted = false;
    verdict.bases_examined = grid.total() + static_cast<std::size_t>(budget.trials);
    return verdict;
}

std::optional<SymmetricMoveWitness> forbidden_move_witness(
    const StateVector& state, const std::set<int>& allowed_k, const SearchBudget& budget,
    const std::optional<std::set<std::size_t>>& restrict_l) {
    const AnonymityResult anon = is_anonymous(state);
    if (!anon.anonymous) {
        throw InvalidInput("forbidden_move_witness requires an anonymous state");
    }
    const int n = state.layout().n_processors;
    const int m = state.layout().qubits_per_processor;
    const LocalBasis computational = LocalBasis::computational(m);
    for (int k = 1; k <= n; ++k) {
        if (allowed_k.count(k)) continue;
        std::set<int> procs;
        for (int p = 1; p <= k; ++p) procs.insert(p);
        const std::vector<int> proc_list = validated_processor_list(state, k, procs);
        const ScanResult scan = scan_basis(state, k, proc_list, computational, restrict_l);
        if (!scan.witness) {
            // No qualifying coefficient in this basis: conclusively no k-move.
            continue;
        }
        if (restrict_l) {
            // Label-restricted moves are judged in the protocol's own basis;
            // the all-bases confirmation does not apply.
            return scan.witness;
        }
        const MoveSearchVerdict verdict = has_move_all_bases(state, k, budget);
        if (!verdict.refuted) {
            return scan.witness;
        }
        // A refuting basis exists, so the computational-basis coefficient was
        // spurious for this k; keep looking at larger k.
    }
    return std::nullopt;
}

namespace {

bool edge_qualifies(const netsim::TreeEdge& edge, const std::vector<int>& processors) {
    bool any_measured = false;
    for (long o : edge.outcomes) {
        if (o >= 0) any_measured = true;
    }
    if (!any_measured) return true;
    long shared = -1;
    for (int p : processors) {
        const long o = edge.outcomes[static_cast<std::size_t>(p - 1)];
        if (o < 0) return false;
        if (shared < 0) shared = o;
        else if (o != shared) return false;
    }
    for (std::size_t i = 0; i < edge.outcomes.size(); ++i) {
        const int p = static_cast<int>(i) + 1;
        if (std::find(processors.begin(), processors.end(), p) != processors.end()) continue;
        if (edge.outcomes[i] >= 0 && edge.outcomes[i] == shared) return false;
    }
    return true;
}

}  // namespace

std::optional<SymmetricPath> find_symmetric_path(const netsim::ExecutionTree& tree, int k) {
    if (tree.nodes.empty()) return std::nullopt;
    const int n = tree.config.layout.n_processors;
    if (k < 1 || k > n) {
        throw InvalidParameter("k must satisfy 0 < k <= n");
    }
    // Lexicographic k-subsets of {1..n}.
    std::vector<int> combo(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) combo[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
        // DFS for a root-to-leaf path of qualifying edges for this set.
        struct Frame {
            std::size_t node;
            std::size_t next_edge = 0;
        };
        std::vector<Frame> stack{{0, 0}};
        std::vector<std::vector<long>> outcomes;
        while (!stack.empty()) {
            Frame& frame = stack.back();
            const netsim::TreeNode& node = tree.nodes[frame.node];
            if (node.leaf != netsim::LeafKind::internal) {
                SymmetricPath path;
                path.processors = combo;
                for (const Frame& f : stack) path.nodes.push_back(f.node);
                path.outcomes = outcomes;
                return path;
            }
            if (frame.next_edge >= node.edges.size()) {
                stack.pop_back();
                if (!outcomes.empty()) outcomes.pop_back();
                continue;
            }
            const netsim::TreeEdge& edge = node.edges[frame.next_edge];
            ++frame.next_edge;
            if (edge_qualifies(edge, combo)) {
                outcomes.push_back(edge.outcomes);
                stack.push_back({edge.child, 0});
            }
        }
        // Advance the combination.
        int i = k - 1;
        while (i >= 0 && combo[static_cast<std::size_t>(i)] == n - (k - 1 - i)) --i;
        if (i < 0) break;
        ++combo[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) {
            combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return std::nullopt;
}

nlohmann::json basis_to_json(const LocalBasis& basis) {
    nlohmann::json vectors = nlohmann::json::array();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        nlohmann::json vec = nlohmann::json::array();
        for (const cplx& v : basis.vector(i)) {
            vec.push_back({{"re", v.real()}, {"im", v.imag()}});
        }
        vectors.push_back(std::move(vec));
    }
    return vectors;
}

nlohmann::json witness_to_json(const SymmetricMoveWitness& witness) {
    return {{"k", witness.k},
            {"processors", witness.processors},
            {"basis", basis_to_json(witness.basis)},
            {"l", witness.l},
            {"followers", witness.followers},
            {"coefficient",
             {{"re", witness.coefficient.real()}, {"im", witness.coefficient.imag()}}}};
}

nlohmann::json refutation_to_json(const BasisRefutation& refutation) {
    return {{"refuted", true},
            {"basis", basis_to_json(refutation.basis)},
            {"max_magnitude", refutation.max_violating_magnitude},
            {"phase", refutation.phase},
            {"index", refutation.index},
            {"seed", refutation.seed}};
}

}  // namespace anonq::symmetry
