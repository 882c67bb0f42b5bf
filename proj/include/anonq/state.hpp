#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "anonq/common.hpp"
#include "anonq/linalg.hpp"

namespace anonq {

// Who owns which qubits. Processor indices are 1-based; processor p owns
// global qubits (p-1)*m .. p*m-1, and qubit 1 is the most significant bit of
// a basis index. So for (n=3, m=1), |001> is index 1 and processor 3 holds
// the excited qubit.
struct ProcessorLayout {
    int n_processors = 0;
    int qubits_per_processor = 0;

    ProcessorLayout() = default;
    ProcessorLayout(int n, int m);

    std::size_t dim() const { return std::size_t{1} << (n_processors * qubits_per_processor); }
    std::size_t local_dim() const { return std::size_t{1} << qubits_per_processor; }

    // Amplitude-index stride between consecutive local values of processor p.
    std::size_t block_stride(int processor) const;

    // Local value of processor p inside global index b.
    std::size_t local_index(std::size_t b, int processor) const;

    // Global index from per-processor local values (digits[0] = processor 1).
    std::size_t compose(const std::vector<std::size_t>& digits) const;

    std::vector<std::size_t> digits(std::size_t b) const;

    // Index of the basis state obtained by sending processor p's block to
    // slot perm[p-1] (perm is a 1-based permutation of {1..n}).
    std::size_t permute_index(std::size_t b, const std::vector<int>& perm) const;

    bool operator==(const ProcessorLayout&) const = default;
};

// Dense pure state over a processor layout. Construction normalizes and
// canonicalizes the global phase (first amplitude above the phase floor is
// made real positive), so value comparison is meaningful.
class StateVector {
public:
    StateVector() = default;

    // Normalizes; throws InvalidParameter on a zero vector or length mismatch.
    StateVector(ProcessorLayout layout, std::vector<cplx> amplitudes);

    // Computational basis state |index>.
    static StateVector basis_state(ProcessorLayout layout, std::size_t index);

    const ProcessorLayout& layout() const { return layout_; }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    std::size_t dim() const { return amps_.size(); }

    const cplx& operator[](std::size_t i) const { return amps_[i]; }

    double norm_sq() const;

    // The factor the raw input was divided by during construction.
    double normalization_factor() const { return norm_factor_; }

    StateVector permute_blocks(const std::vector<int>& perm) const;

    bool approx_equal(const StateVector& other, double tolerance = 1e-12) const;
    bool approx_equal_up_to_phase(const StateVector& other, double tolerance = 1e-10) const;

private:
    ProcessorLayout layout_;
    std::vector<cplx> amps_;
    double norm_factor_ = 1.0;
};

cplx inner_product(const StateVector& a, const StateVector& b);

// In-place application of a d' x d' matrix to every processor block of a raw
// amplitude vector (no normalization, no phase fixing). d' must equal the
// layout's local dimension.
void apply_to_all_blocks(std::vector<cplx>& amps, const ProcessorLayout& layout,
                         const CMat& m);

// Same, restricted to one processor.
void apply_to_block(std::vector<cplx>& amps, const ProcessorLayout& layout,
                    int processor, const CMat& m);

}  // namespace anonq
