#include "anonq/ops.hpp"

#include <cmath>
#include <numeric>

#include "anonq/kernels.hpp"

namespace anonq {

AnonymityResult is_anonymous(const StateVector& state, double tolerance) {
    const int n = state.layout().n_processors;
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int p = 1; p < n; ++p) {
        std::iota(perm.begin(), perm.end(), 1);
        std::swap(perm[static_cast<std::size_t>(p - 1)], perm[static_cast<std::size_t>(p)]);
        const StateVector swapped = state.permute_blocks(perm);
        if (!state.approx_equal_up_to_phase(swapped, tolerance)) {
            return {false, std::make_pair(p, p + 1)};
        }
    }
    return {true, std::nullopt};
}

StateVector apply_local_unitary(const StateVector& state, const CMat& u) {
    if (!u.is_unitary()) {
        throw InvalidOperator("apply_local_unitary requires a unitary operator");
    }
    std::vector<cplx> amps = state.amplitudes();
    apply_to_all_blocks(amps, state.layout(), u);
    return StateVector(state.layout(), std::move(amps));
}

std::vector<MeasurementBranch> measure_processor(const StateVector& state, int processor,
                                                 const ProjectorSet& projectors) {
    if (projectors.dim() != state.layout().local_dim()) {
        throw InvalidOperator("projector dimension does not match the local block");
    }
    std::vector<MeasurementBranch> branches;
    double total = 0.0;
    for (std::size_t j = 0; j < projectors.size(); ++j) {
        std::vector<cplx> amps = state.amplitudes();
        apply_to_block(amps, state.layout(), processor, projectors[j]);
        const double prob = kernels::active().norm_sq(amps.data(), amps.size());
        total += prob;
        if (prob > tol::prune) {
            branches.push_back({j, prob, StateVector(state.layout(), std::move(amps))});
        }
    }
    if (std::abs(total - 1.0) > tol::ortho) {
        throw InvalidOperator("projector set is not complete on this state");
    }
    return branches;
}

double ReducedDensityMatrix::purity() const {
    return (entries * entries).trace_real();
}

std::vector<double> ReducedDensityMatrix::eigenvalues() const {
    return hermitian_eigenvalues(entries);
}

ReducedDensityMatrix reduced_density_matrix(const StateVector& state, int processor) {
    const auto& layout = state.layout();
    const std::size_t d = layout.local_dim();
    const std::size_t stride = layout.block_stride(processor);
    const std::size_t dim = state.dim();
    CMat rho(d, d);
    // Index b = hi * (d*stride) + x * stride + lo; trace out (hi, lo).
    const std::size_t block = d * stride;
    for (std::size_t base = 0; base < dim; base += block) {
        for (std::size_t lo = 0; lo < stride; ++lo) {
            for (std::size_t i = 0; i < d; ++i) {
                const cplx ai = state[base + i * stride + lo];
                if (ai == cplx{0.0, 0.0}) continue;
                for (std::size_t j = 0; j < d; ++j) {
                    rho.at(i, j) += ai * std::conj(state[base + j * stride + lo]);
                }
            }
        }
    }
    return {rho};
}

StateVector grow_blocks(const StateVector& state, int extra) {
    if (extra <= 0) {
        throw InvalidParameter("grow_blocks requires a positive qubit count");
    }
    const auto& old_layout = state.layout();
    ProcessorLayout new_layout(old_layout.n_processors,
                               old_layout.qubits_per_processor + extra);
    std::vector<cplx> amps(new_layout.dim(), cplx{0.0, 0.0});
    for (std::size_t b = 0; b < state.dim(); ++b) {
        if (state[b] == cplx{0.0, 0.0}) continue;
        auto digits = old_layout.digits(b);
        for (auto& digit : digits) {
            digit <<= extra;  // fresh qubits sit at the end of the block, in |0>
        }
        amps[new_layout.compose(digits)] = state[b];
    }
    return StateVector(new_layout, std::move(amps));
}

}  // namespace anonq
