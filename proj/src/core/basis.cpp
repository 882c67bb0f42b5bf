#include "anonq/basis.hpp"

#include <cmath>
#include <numbers>

namespace anonq {

LocalBasis::LocalBasis(std::vector<std::vector<cplx>> vectors) : vectors_(std::move(vectors)) {
    if (vectors_.empty()) {
        throw InvalidParameter("empty basis");
    }
    const std::size_t d = vectors_[0].size();
    if (vectors_.size() != d) {
        throw InvalidParameter("basis must have exactly dim vectors");
    }
    for (std::size_t i = 0; i < d; ++i) {
        if (vectors_[i].size() != d) {
            throw InvalidParameter("basis vectors must share one dimension");
        }
        for (std::size_t j = 0; j <= i; ++j) {
            cplx ip{0.0, 0.0};
            for (std::size_t x = 0; x < d; ++x) {
                ip += std::conj(vectors_[i][x]) * vectors_[j][x];
            }
            const double want = (i == j) ? 1.0 : 0.0;
            if (std::abs(ip - cplx{want, 0.0}) > tol::ortho) {
                throw InvalidOperator("basis vectors are not orthonormal");
            }
        }
    }
}

LocalBasis LocalBasis::computational(int m) {
    const std::size_t d = std::size_t{1} << m;
    std::vector<std::vector<cplx>> vecs(d, std::vector<cplx>(d, cplx{0.0, 0.0}));
    for (std::size_t i = 0; i < d; ++i) {
        vecs[i][i] = cplx{1.0, 0.0};
    }
    return LocalBasis(std::move(vecs));
}

LocalBasis LocalBasis::hadamard(int m) {
    const double r = 1.0 / std::numbers::sqrt2;
    const std::size_t d = std::size_t{1} << m;
    std::vector<std::vector<cplx>> vecs(d, std::vector<cplx>(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t x = 0; x < d; ++x) {
            // <x|i-th sign vector> = prod_q (+-1)/sqrt(2), minus when both the
            // label bit and the value bit are 1.
            int sign = 1;
            for (int q = 0; q < m; ++q) {
                const std::size_t bit = std::size_t{1} << (m - 1 - q);
                if ((i & bit) && (x & bit)) sign = -sign;
            }
            vecs[i][x] = cplx{sign * std::pow(r, m), 0.0};
        }
    }
    return LocalBasis(std::move(vecs));
}

LocalBasis LocalBasis::fourier(int m) {
    const std::size_t d = std::size_t{1} << m;
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    std::vector<std::vector<cplx>> vecs(d, std::vector<cplx>(d));
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t x = 0; x < d; ++x) {
            const double arg = 2.0 * std::numbers::pi * static_cast<double>(k * x) /
                               static_cast<double>(d);
            vecs[k][x] = norm * cplx{std::cos(arg), std::sin(arg)};
        }
    }
    return LocalBasis(std::move(vecs));
}

LocalBasis LocalBasis::rotation_product(const std::vector<double>& thetas,
                                        const std::vector<double>& phis) {
    if (thetas.size() != phis.size() || thetas.empty()) {
        throw InvalidParameter("rotation_product needs one (theta, phi) per qubit");
    }
    const int m = static_cast<int>(thetas.size());
    CMat u = CMat::identity(1);
    for (int q = 0; q < m; ++q) {
        CMat r(2, 2);
        const double c = std::cos(thetas[static_cast<std::size_t>(q)]);
        const double s = std::sin(thetas[static_cast<std::size_t>(q)]);
        const double phi = phis[static_cast<std::size_t>(q)];
        const cplx eip{std::cos(phi), std::sin(phi)};
        r.at(0, 0) = cplx{c, 0.0};
        r.at(1, 0) = eip * s;
        r.at(0, 1) = -std::conj(eip) * s;
        r.at(1, 1) = cplx{c, 0.0};
        u = kron(u, r);
    }
    const std::size_t d = std::size_t{1} << m;
    std::vector<std::vector<cplx>> vecs(d, std::vector<cplx>(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t x = 0; x < d; ++x) {
            vecs[i][x] = u.at(x, i);
        }
    }
    return LocalBasis(std::move(vecs));
}

LocalBasis LocalBasis::random(int m, std::mt19937_64& rng) {
    const std::size_t d = std::size_t{1} << m;
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMat g(d, d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            g.at(r, c) = cplx{gauss(rng), gauss(rng)};
        }
    }
    orthonormalize_columns(g);
    std::vector<std::vector<cplx>> vecs(d, std::vector<cplx>(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t x = 0; x < d; ++x) {
            vecs[i][x] = g.at(x, i);
        }
    }
    return LocalBasis(std::move(vecs));
}

CMat LocalBasis::as_matrix() const {
    const std::size_t d = dim();
    CMat m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t x = 0; x < d; ++x) {
            m.at(x, i) = vectors_[i][x];
        }
    }
    return m;
}

LocalBasis LocalBasis::transformed(const CMat& u) const {
    if (!u.is_unitary()) {
        throw InvalidOperator("basis transform requires a unitary");
    }
    std::vector<std::vector<cplx>> vecs;
    vecs.reserve(vectors_.size());
    for (const auto& v : vectors_) {
        vecs.push_back(u * v);
    }
    return LocalBasis(std::move(vecs));
}

ProjectorSet::ProjectorSet(std::vector<CMat> projectors) : projectors_(std::move(projectors)) {
    if (projectors_.empty()) {
        throw InvalidOperator("empty projector set");
    }
    const std::size_t d = projectors_[0].rows();
    CMat sum(d, d);
    for (const CMat& p : projectors_) {
        if (p.rows() != d || p.cols() != d) {
            throw InvalidOperator("projectors must share one dimension");
        }
        if (!p.is_hermitian()) {
            throw InvalidOperator("projector is not Hermitian");
        }
        if ((p * p - p).max_abs() > tol::ortho) {
            throw InvalidOperator("projector is not idempotent");
        }
        sum = sum + p;
    }
    if ((sum - CMat::identity(d)).max_abs() > tol::ortho) {
        throw InvalidOperator("projector set does not resolve the identity");
    }
    for (std::size_t a = 0; a < projectors_.size(); ++a) {
        for (std::size_t b = a + 1; b < projectors_.size(); ++b) {
            if ((projectors_[a] * projectors_[b]).max_abs() > tol::ortho) {
                throw InvalidOperator("projectors are not mutually orthogonal");
            }
        }
    }
}

ProjectorSet ProjectorSet::from_basis(const LocalBasis& basis) {
    std::vector<CMat> ps;
    ps.reserve(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        ps.push_back(outer(basis.vector(i), basis.vector(i)));
    }
    return ProjectorSet(std::move(ps));
}

ProjectorSet ProjectorSet::coarse(const LocalBasis& basis,
                                  const std::vector<std::vector<std::size_t>>& groups) {
    const std::size_t d = basis.dim();
    std::vector<CMat> ps;
    std::vector<bool> seen(d, false);
    for (const auto& group : groups) {
        CMat p(d, d);
        for (std::size_t label : group) {
            if (label >= d || seen[label]) {
                throw InvalidParameter("coarse projector groups must partition the labels");
            }
            seen[label] = true;
            p = p + outer(basis.vector(label), basis.vector(label));
        }
        ps.push_back(std::move(p));
    }
    for (bool s : seen) {
        if (!s) throw InvalidParameter("coarse projector groups must cover all labels");
    }
    return ProjectorSet(std::move(ps));
}

}  // namespace anonq
