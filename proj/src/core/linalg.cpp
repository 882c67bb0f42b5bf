#include "anonq/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace anonq {

CMat CMat::identity(std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.at(i, i) = cplx{1.0, 0.0};
    }
    return m;
}

CMat CMat::adjoint() const {
    CMat m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            m.at(c, r) = std::conj(at(r, c));
        }
    }
    return m;
}

CMat CMat::operator*(const CMat& rhs) const {
    if (cols_ != rhs.rows_) {
        throw InvalidParameter("matrix product dimension mismatch");
    }
    CMat m(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const cplx v = at(r, k);
            if (v == cplx{0.0, 0.0}) continue;
            for (std::size_t c = 0; c < rhs.cols_; ++c) {
                m.at(r, c) += v * rhs.at(k, c);
            }
        }
    }
    return m;
}

CMat CMat::operator+(const CMat& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
        throw InvalidParameter("matrix sum dimension mismatch");
    }
    CMat m = *this;
    for (std::size_t i = 0; i < m.a_.size(); ++i) {
        m.a_[i] += rhs.a_[i];
    }
    return m;
}

CMat CMat::operator-(const CMat& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
        throw InvalidParameter("matrix difference dimension mismatch");
    }
    CMat m = *this;
    for (std::size_t i = 0; i < m.a_.size(); ++i) {
        m.a_[i] -= rhs.a_[i];
    }
    return m;
}

std::vector<cplx> CMat::operator*(const std::vector<cplx>& v) const {
    if (cols_ != v.size()) {
        throw InvalidParameter("matrix-vector dimension mismatch");
    }
    std::vector<cplx> out(rows_, cplx{0.0, 0.0});
    for (std::size_t r = 0; r < rows_; ++r) {
        cplx acc{0.0, 0.0};
        for (std::size_t c = 0; c < cols_; ++c) {
            acc += at(r, c) * v[c];
        }
        out[r] = acc;
    }
    return out;
}

double CMat::max_abs() const {
    double m = 0.0;
    for (const cplx& v : a_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

bool CMat::is_unitary(double tolerance) const {
    if (rows_ != cols_) return false;
    return (adjoint() * *this - identity(rows_)).max_abs() <= tolerance;
}

bool CMat::is_hermitian(double tolerance) const {
    if (rows_ != cols_) return false;
    return (*this - adjoint()).max_abs() <= tolerance;
}

double CMat::trace_real() const { return trace().real(); }

cplx CMat::trace() const {
    cplx t{0.0, 0.0};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
        t += at(i, i);
    }
    return t;
}

CMat kron(const CMat& a, const CMat& b) {
    CMat m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar) {
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const cplx v = a.at(ar, ac);
            if (v == cplx{0.0, 0.0}) continue;
            for (std::size_t br = 0; br < b.rows(); ++br) {
                for (std::size_t bc = 0; bc < b.cols(); ++bc) {
                    m.at(ar * b.rows() + br, ac * b.cols() + bc) = v * b.at(br, bc);
                }
            }
        }
    }
    return m;
}

CMat outer(const std::vector<cplx>& u, const std::vector<cplx>& v) {
    CMat m(u.size(), v.size());
    for (std::size_t r = 0; r < u.size(); ++r) {
        for (std::size_t c = 0; c < v.size(); ++c) {
            m.at(r, c) = u[r] * std::conj(v[c]);
        }
    }
    return m;
}

void orthonormalize_columns(CMat& m) {
    const std::size_t n = m.rows();
    const std::size_t k = m.cols();
    auto col_dot = [&](std::size_t a, std::size_t b) {
        cplx s{0.0, 0.0};
        for (std::size_t r = 0; r < n; ++r) {
            s += std::conj(m.at(r, a)) * m.at(r, b);
        }
        return s;
    };
    for (std::size_t c = 0; c < k; ++c) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t p = 0; p < c; ++p) {
                const cplx proj = col_dot(p, c);
                for (std::size_t r = 0; r < n; ++r) {
                    m.at(r, c) -= proj * m.at(r, p);
                }
            }
        }
        const double norm = std::sqrt(col_dot(c, c).real());
        if (norm < 1e-12) {
            throw InvalidOperator("orthonormalize_columns: dependent columns");
        }
        for (std::size_t r = 0; r < n; ++r) {
            m.at(r, c) /= norm;
        }
    }
}

std::vector<double> hermitian_eigenvalues(const CMat& input) {
    if (!input.is_hermitian(1e-8)) {
        throw InvalidOperator("hermitian_eigenvalues: matrix is not Hermitian");
    }
    CMat m = input;
    const std::size_t n = m.rows();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off = std::max(off, std::abs(m.at(p, q)));
            }
        }
        if (off < 1e-14) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = m.at(p, q);
                if (std::abs(apq) < 1e-15) continue;
                // Unitary 2x2 rotation eliminating (p,q): diagonalize the
                // Hermitian submatrix [[app, apq], [conj(apq), aqq]].
                const double app = m.at(p, p).real();
                const double aqq = m.at(q, q).real();
                const double theta = 0.5 * std::atan2(2.0 * std::abs(apq), app - aqq);
                const cplx phase = apq / std::abs(apq);
                const cplx c{std::cos(theta), 0.0};
                const cplx s = std::sin(theta) * phase;
                // Rows p,q: m <- R^dagger m R with R = [[c, s], [-conj(s), c]].
                for (std::size_t j = 0; j < n; ++j) {
                    const cplx mp = m.at(p, j);
                    const cplx mq = m.at(q, j);
                    m.at(p, j) = std::conj(c) * mp + std::conj(s) * mq;
                    m.at(q, j) = -s * mp + c * mq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx mp = m.at(i, p);
                    const cplx mq = m.at(i, q);
                    m.at(i, p) = mp * c + mq * s;
                    m.at(i, q) = -mp * std::conj(s) + mq * c;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) {
        eig[i] = m.at(i, i).real();
    }
    std::sort(eig.begin(), eig.end());
    return eig;
}

}  // namespace anonq
