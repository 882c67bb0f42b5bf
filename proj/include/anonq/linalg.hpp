#pragma once

#include <cstddef>
#include <vector>

#include "anonq/common.hpp"

namespace anonq {

// Dense complex matrix, row-major. Local operators never exceed the block
// dimension 2^m (plus ancilla headroom), so everything here is small and
// unblocked on purpose; the statevector kernels carry the heavy loops.
class CMat {
public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, cplx{0.0, 0.0}) {}

    static CMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const cplx& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    const cplx* data() const { return a_.data(); }
    cplx* data() { return a_.data(); }

    CMat adjoint() const;
    CMat operator*(const CMat& rhs) const;
    CMat operator+(const CMat& rhs) const;
    CMat operator-(const CMat& rhs) const;
    std::vector<cplx> operator*(const std::vector<cplx>& v) const;

    double max_abs() const;
    bool is_unitary(double tolerance = tol::ortho) const;
    bool is_hermitian(double tolerance = tol::ortho) const;
    double trace_real() const;
    cplx trace() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> a_;
};

CMat kron(const CMat& a, const CMat& b);

// Outer product |u><v|.
CMat outer(const std::vector<cplx>& u, const std::vector<cplx>& v);

// Modified Gram-Schmidt with one re-orthogonalization pass. Columns of the
// input are replaced by an orthonormal set spanning the same space; throws
// InvalidOperator when the columns are numerically dependent.
void orthonormalize_columns(CMat& m);

// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations,
// ascending order.
std::vector<double> hermitian_eigenvalues(const CMat& m);

}  // namespace anonq
