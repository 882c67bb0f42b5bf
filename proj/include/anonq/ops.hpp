#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "anonq/basis.hpp"
#include "anonq/state.hpp"

namespace anonq {

struct AnonymityResult {
    bool anonymous = false;
    // Violating adjacent transposition (p, p+1), present iff not anonymous.
    std::optional<std::pair<int, int>> violating_transposition;
};

// Permutation invariance up to phase, checked on the n-1 adjacent
// transpositions (they generate the full group; transposition phases compose
// to a character, so ray invariance extends to every permutation).
AnonymityResult is_anonymous(const StateVector& state, double tolerance = 1e-10);

// u applied to every processor block. Throws InvalidOperator unless u is
// unitary within tol::ortho.
StateVector apply_local_unitary(const StateVector& state, const CMat& u);

struct MeasurementBranch {
    std::size_t outcome = 0;
    double probability = 0.0;
    StateVector post_state;
};

// Projective measurement of one processor. Returns every outcome with
// probability above the prune threshold; probabilities sum to 1 for a
// complete projector set and each post-state is renormalized.
std::vector<MeasurementBranch> measure_processor(const StateVector& state, int processor,
                                                 const ProjectorSet& projectors);

struct ReducedDensityMatrix {
    CMat entries;  // 2^m x 2^m, Hermitian, unit trace

    double purity() const;
    std::vector<double> eigenvalues() const;
};

// Partial trace over every block except the given processor's.
ReducedDensityMatrix reduced_density_matrix(const StateVector& state, int processor);

// Appends `extra` fresh |0> qubits to the end of every processor block.
StateVector grow_blocks(const StateVector& state, int extra);

}  // namespace anonq
