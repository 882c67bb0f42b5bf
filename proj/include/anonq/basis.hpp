#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "anonq/common.hpp"
#include "anonq/linalg.hpp"

namespace anonq {

// Orthonormal basis of the local space H (dimension 2^m). Vector i is the
// label-i outcome; as a matrix, column i is the i-th basis vector.
class LocalBasis {
public:
    explicit LocalBasis(std::vector<std::vector<cplx>> vectors);

    static LocalBasis computational(int m);
    // m-fold tensor power of {|+>, |->}; label bits select the sign per qubit.
    static LocalBasis hadamard(int m);
    // Discrete Fourier basis over the whole 2^m-dimensional block.
    static LocalBasis fourier(int m);
    // Product of per-qubit rotations: qubit q uses
    //   b0 = cos(theta_q)|0> + e^{i phi_q} sin(theta_q)|1>,
    //   b1 = -e^{-i phi_q} sin(theta_q)|0> + cos(theta_q)|1>.
    static LocalBasis rotation_product(const std::vector<double>& thetas,
                                       const std::vector<double>& phis);
    // Haar-flavored random basis: QR-orthonormalized seeded complex Gaussian.
    static LocalBasis random(int m, std::mt19937_64& rng);

    std::size_t dim() const { return vectors_.empty() ? 0 : vectors_[0].size(); }
    std::size_t size() const { return vectors_.size(); }
    const std::vector<cplx>& vector(std::size_t i) const { return vectors_[i]; }

    // Matrix whose columns are the basis vectors (maps labels to amplitudes).
    CMat as_matrix() const;

    // Basis obtained by applying u to every vector.
    LocalBasis transformed(const CMat& u) const;

private:
    std::vector<std::vector<cplx>> vectors_;
};

// Complete set of orthogonal projectors over H: sum = identity, mutually
// orthogonal, each Hermitian idempotent. Validated at construction.
class ProjectorSet {
public:
    explicit ProjectorSet(std::vector<CMat> projectors);

    // Rank-1 projectors |phi_i><phi_i| from a basis.
    static ProjectorSet from_basis(const LocalBasis& basis);

    // Coarse projectors summing the given label groups of a basis (J < 2^m).
    static ProjectorSet coarse(const LocalBasis& basis,
                               const std::vector<std::vector<std::size_t>>& groups);

    std::size_t size() const { return projectors_.size(); }
    std::size_t dim() const { return projectors_.empty() ? 0 : projectors_[0].rows(); }
    const CMat& operator[](std::size_t j) const { return projectors_[j]; }

private:
    std::vector<CMat> projectors_;
};

}  // namespace anonq
