#pragma once

// Test-side reference computations. Everything here is deliberately
// independent of the library's kernels and index conventions: plain nested
// loops over explicitly constructed tensors, slow and obvious.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Vec = std::vector<cplx>;
using Mat = std::vector<std::vector<cplx>>;

inline Vec kron(const Vec& a, const Vec& b) {
    Vec out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i * b.size() + j] = a[i] * b[j];
        }
    }
    return out;
}

inline Vec kron_all(const std::vector<Vec>& factors) {
    Vec out{cplx{1.0, 0.0}};
    for (const Vec& f : factors) {
        out = kron(out, f);
    }
    return out;
}

inline Vec add(const Vec& a, const Vec& b) {
    Vec out = a;
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

inline Vec normalized(Vec v) {
    double n2 = 0.0;
    for (const cplx& a : v) n2 += std::norm(a);
    const double n = std::sqrt(n2);
    for (cplx& a : v) a /= n;
    return v;
}

inline std::size_t bits_to_index(const std::string& bits) {
    std::size_t idx = 0;
    for (char c : bits) idx = (idx << 1) | static_cast<std::size_t>(c - '0');
    return idx;
}

// Distinct results of permuting the m-wide blocks of a pattern string over
// all n! processor permutations.
inline std::set<std::string> block_permutations(const std::string& pattern, int n, int m) {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::set<std::string> out;
    do {
        std::string s(pattern.size(), '?');
        for (int p = 0; p < n; ++p) {
            const int dest = order[static_cast<std::size_t>(p)];
            for (int q = 0; q < m; ++q) {
                s[static_cast<std::size_t>(dest * m + q)] =
                    pattern[static_cast<std::size_t>(p * m + q)];
            }
        }
        out.insert(s);
    } while (std::next_permutation(order.begin(), order.end()));
    return out;
}

inline Mat matmul(const Mat& a, const Mat& b) {
    const std::size_t r = a.size(), k = b.size(), c = b[0].size();
    Mat out(r, Vec(c, cplx{0.0, 0.0}));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t t = 0; t < k; ++t) {
            for (std::size_t j = 0; j < c; ++j) {
                out[i][j] += a[i][t] * b[t][j];
            }
        }
    }
    return out;
}

inline Vec matvec(const Mat& m, const Vec& v) {
    Vec out(m.size(), cplx{0.0, 0.0});
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            out[i] += m[i][j] * v[j];
        }
    }
    return out;
}

inline Mat kron_mat(const Mat& a, const Mat& b) {
    const std::size_t ar = a.size(), ac = a[0].size(), br = b.size(), bc = b[0].size();
    Mat out(ar * br, Vec(ac * bc, cplx{0.0, 0.0}));
    for (std::size_t i = 0; i < ar; ++i) {
        for (std::size_t j = 0; j < ac; ++j) {
            for (std::size_t x = 0; x < br; ++x) {
                for (std::size_t y = 0; y < bc; ++y) {
                    out[i * br + x][j * bc + y] = a[i][j] * b[x][y];
                }
            }
        }
    }
    return out;
}

inline Mat identity(std::size_t d) {
    Mat m(d, Vec(d, cplx{0.0, 0.0}));
    for (std::size_t i = 0; i < d; ++i) m[i][i] = cplx{1.0, 0.0};
    return m;
}

// rho[i][j] for the given processor (1-based), blocks of m qubits, qubit 1 of
// a block most significant, processor 1 owning the most significant block.
inline Mat reduced_density(const Vec& amps, int n, int m, int processor) {
    const std::size_t d = std::size_t{1} << m;
    const int shift = m * (n - processor);
    Mat rho(d, Vec(d, cplx{0.0, 0.0}));
    for (std::size_t a = 0; a < amps.size(); ++a) {
        for (std::size_t b = 0; b < amps.size(); ++b) {
            const std::size_t ia = (a >> shift) & (d - 1);
            const std::size_t ib = (b >> shift) & (d - 1);
            // indices must agree outside the block
            const std::size_t mask = ~((d - 1) << shift);
            if ((a & mask) != (b & mask)) continue;
            rho[ia][ib] += amps[a] * std::conj(amps[b]);
        }
    }
    return rho;
}

inline double norm_sq(const Vec& v) {
    double s = 0.0;
    for (const cplx& a : v) s += std::norm(a);
    return s;
}

inline bool equal_up_to_phase(const Vec& a, const Vec& b, double tolerance) {
    if (a.size() != b.size()) return false;
    cplx ip{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) ip += std::conj(a[i]) * b[i];
    if (std::abs(std::abs(ip) - 1.0) > tolerance) return false;
    const cplx phase = ip / std::abs(ip);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(phase * a[i] - b[i]) > tolerance) return false;
    }
    return true;
}

}  // namespace oracle
