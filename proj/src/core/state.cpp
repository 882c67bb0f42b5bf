#include "anonq/state.hpp"

#include <cmath>

#include "anonq/kernels.hpp"

namespace anonq {

ProcessorLayout::ProcessorLayout(int n, int m) : n_processors(n), qubits_per_processor(m) {
    if (n < 1 || m < 1) {
        throw InvalidParameter("layout requires at least one processor and one qubit each");
    }
    if (n * m > 30) {
        throw InvalidParameter("layout exceeds the supported 2^30 amplitude limit");
    }
}

std::size_t ProcessorLayout::block_stride(int processor) const {
    const int shift = qubits_per_processor * (n_processors - processor);
    return std::size_t{1} << shift;
}

std::size_t ProcessorLayout::local_index(std::size_t b, int processor) const {
    return (b / block_stride(processor)) & (local_dim() - 1);
}

std::size_t ProcessorLayout::compose(const std::vector<std::size_t>& digits) const {
    std::size_t b = 0;
    for (int p = 1; p <= n_processors; ++p) {
        b |= digits[static_cast<std::size_t>(p - 1)] * block_stride(p);
    }
    return b;
}

std::vector<std::size_t> ProcessorLayout::digits(std::size_t b) const {
    std::vector<std::size_t> d(static_cast<std::size_t>(n_processors));
    for (int p = 1; p <= n_processors; ++p) {
        d[static_cast<std::size_t>(p - 1)] = local_index(b, p);
    }
    return d;
}

std::size_t ProcessorLayout::permute_index(std::size_t b, const std::vector<int>& perm) const {
    std::size_t out = 0;
    for (int p = 1; p <= n_processors; ++p) {
        const int dest = perm[static_cast<std::size_t>(p - 1)];
        out |= local_index(b, p) * block_stride(dest);
    }
    return out;
}

StateVector::StateVector(ProcessorLayout layout, std::vector<cplx> amplitudes)
    : layout_(layout), amps_(std::move(amplitudes)) {
    if (amps_.size() != layout_.dim()) {
        throw InvalidParameter("amplitude array length does not match layout dimension");
    }
    const auto& k = kernels::active();
    const double norm = std::sqrt(k.norm_sq(amps_.data(), amps_.size()));
    if (norm < 1e-14) {
        throw InvalidParameter("cannot normalize the zero vector");
    }
    norm_factor_ = norm;
    k.scale(amps_.data(), amps_.size(), cplx{1.0 / norm, 0.0});
    // Canonical global phase: first amplitude above the floor becomes real
    // positive.
    for (const cplx& a : amps_) {
        const double mag = std::abs(a);
        if (mag > tol::phase_floor) {
            k.scale(amps_.data(), amps_.size(), std::conj(a) / mag);
            break;
        }
    }
}

StateVector StateVector::basis_state(ProcessorLayout layout, std::size_t index) {
    std::vector<cplx> amps(layout.dim(), cplx{0.0, 0.0});
    if (index >= amps.size()) {
        throw InvalidParameter("basis index out of range");
    }
    amps[index] = cplx{1.0, 0.0};
    return StateVector(layout, std::move(amps));
}

double StateVector::norm_sq() const {
    return kernels::active().norm_sq(amps_.data(), amps_.size());
}

StateVector StateVector::permute_blocks(const std::vector<int>& perm) const {
    if (perm.size() != static_cast<std::size_t>(layout_.n_processors)) {
        throw InvalidParameter("permutation length does not match processor count");
    }
    std::vector<cplx> out(amps_.size(), cplx{0.0, 0.0});
    for (std::size_t b = 0; b < amps_.size(); ++b) {
        out[layout_.permute_index(b, perm)] = amps_[b];
    }
    return StateVector(layout_, std::move(out));
}

bool StateVector::approx_equal(const StateVector& other, double tolerance) const {
    if (layout_ != other.layout_) return false;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (std::abs(amps_[i] - other.amps_[i]) > tolerance) return false;
    }
    return true;
}

bool StateVector::approx_equal_up_to_phase(const StateVector& other, double tolerance) const {
    if (layout_ != other.layout_) return false;
    const cplx ip = inner_product(*this, other);
    if (std::abs(std::abs(ip) - 1.0) > tolerance) return false;
    const cplx phase = ip / std::abs(ip);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (std::abs(phase * amps_[i] - other.amps_[i]) > tolerance) return false;
    }
    return true;
}

cplx inner_product(const StateVector& a, const StateVector& b) {
    if (a.layout() != b.layout()) {
        throw InvalidParameter("inner product across different layouts");
    }
    return kernels::active().inner(a.amplitudes().data(), b.amplitudes().data(), a.dim());
}

void apply_to_block(std::vector<cplx>& amps, const ProcessorLayout& layout,
                    int processor, const CMat& m) {
    const std::size_t d = layout.local_dim();
    if (m.rows() != d || m.cols() != d) {
        throw InvalidOperator("operator dimension does not match the local block");
    }
    if (processor < 1 || processor > layout.n_processors) {
        throw InvalidParameter("processor index out of range");
    }
    kernels::active().apply_matrix(amps.data(), amps.size(), m.data(), d,
                                   layout.block_stride(processor));
}

void apply_to_all_blocks(std::vector<cplx>& amps, const ProcessorLayout& layout,
                         const CMat& m) {
    for (int p = 1; p <= layout.n_processors; ++p) {
        apply_to_block(amps, layout, p, m);
    }
}

}  // namespace anonq
