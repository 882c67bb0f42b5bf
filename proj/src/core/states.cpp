#include "anonq/states.hpp"

#include <algorithm>
#include <cmath>

namespace anonq {

namespace {

// Distinct permutations of a digit multiset, via sorted next_permutation.
std::vector<std::vector<std::size_t>> distinct_arrangements(std::vector<std::size_t> digits) {
    std::sort(digits.begin(), digits.end());
    std::vector<std::vector<std::size_t>> out;
    do {
        out.push_back(digits);
    } while (std::next_permutation(digits.begin(), digits.end()));
    return out;
}

}  // namespace

StateVector make_w(int n) {
    if (n < 2) {
        throw InvalidParameter("make_w requires n >= 2");
    }
    ProcessorLayout layout(n, 1);
    std::vector<cplx> amps(layout.dim(), cplx{0.0, 0.0});
    for (int j = 0; j < n; ++j) {
        amps[std::size_t{1} << j] = cplx{1.0, 0.0};
    }
    return StateVector(layout, std::move(amps));
}

StateVector make_w_complement(int n) {
    if (n < 2) {
        throw InvalidParameter("make_w_complement requires n >= 2");
    }
    ProcessorLayout layout(n, 1);
    const std::size_t all = layout.dim() - 1;
    std::vector<cplx> amps(layout.dim(), cplx{0.0, 0.0});
    for (int j = 0; j < n; ++j) {
        amps[all ^ (std::size_t{1} << j)] = cplx{1.0, 0.0};
    }
    return StateVector(layout, std::move(amps));
}

StateVector make_ghz(int n) {
    if (n < 2) {
        throw InvalidParameter("make_ghz requires n >= 2");
    }
    ProcessorLayout layout(n, 1);
    std::vector<cplx> amps(layout.dim(), cplx{0.0, 0.0});
    amps[0] = cplx{1.0, 0.0};
    amps[layout.dim() - 1] = cplx{1.0, 0.0};
    return StateVector(layout, std::move(amps));
}

StateVector make_perm_closure(const std::string& pattern, const ProcessorLayout& layout) {
    const int n = layout.n_processors;
    const int m = layout.qubits_per_processor;
    if (pattern.size() != static_cast<std::size_t>(n * m)) {
        throw InvalidParameter("pattern length must equal n*m");
    }
    std::vector<std::size_t> digits(static_cast<std::size_t>(n), 0);
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < m; ++q) {
            const char c = pattern[static_cast<std::size_t>(p * m + q)];
            if (c != '0' && c != '1') {
                throw InvalidParameter("pattern must be a bit string");
            }
            digits[static_cast<std::size_t>(p)] =
                (digits[static_cast<std::size_t>(p)] << 1) | static_cast<std::size_t>(c - '0');
        }
    }
    std::vector<cplx> amps(layout.dim(), cplx{0.0, 0.0});
    for (const auto& arrangement : distinct_arrangements(digits)) {
        amps[layout.compose(arrangement)] = cplx{1.0, 0.0};
    }
    return StateVector(layout, std::move(amps));
}

StateVector perm_closure_labels(const std::vector<std::size_t>& labels,
                                const LocalBasis& basis, const ProcessorLayout& layout) {
    const int n = layout.n_processors;
    if (labels.size() != static_cast<std::size_t>(n)) {
        throw InvalidParameter("need one label per processor");
    }
    if (basis.dim() != layout.local_dim()) {
        throw InvalidParameter("basis dimension does not match the layout");
    }
    for (std::size_t l : labels) {
        if (l >= basis.size()) {
            throw InvalidParameter("basis label out of range");
        }
    }
    std::vector<cplx> amps(layout.dim(), cplx{0.0, 0.0});
    for (const auto& arrangement : distinct_arrangements(labels)) {
        // Add the product vector phi_{a_1} x ... x phi_{a_n}.
        for (std::size_t b = 0; b < amps.size(); ++b) {
            cplx term{1.0, 0.0};
            for (int p = 1; p <= n; ++p) {
                term *= basis.vector(arrangement[static_cast<std::size_t>(p - 1)])
                            [layout.local_index(b, p)];
                if (term == cplx{0.0, 0.0}) break;
            }
            amps[b] += term;
        }
    }
    return StateVector(layout, std::move(amps));
}

StateVector make_generalized_w(std::size_t leader_label,
                               const std::vector<std::size_t>& follower_labels,
                               const LocalBasis& basis, const ProcessorLayout& layout) {
    if (follower_labels.size() != static_cast<std::size_t>(layout.n_processors - 1)) {
        throw InvalidParameter("need n-1 follower labels");
    }
    for (std::size_t f : follower_labels) {
        if (f == leader_label) {
            throw InvalidFamily("leader label occurs among the follower labels");
        }
    }
    std::vector<std::size_t> labels;
    labels.reserve(follower_labels.size() + 1);
    labels.push_back(leader_label);
    labels.insert(labels.end(), follower_labels.begin(), follower_labels.end());
    return perm_closure_labels(labels, basis, layout);
}

StateVector make_generalized_ghz(const std::vector<cplx>& coefficients,
                                 const LocalBasis& basis, const ProcessorLayout& layout) {
    if (coefficients.size() != layout.local_dim()) {
        throw InvalidParameter("need one coefficient per basis label");
    }
    if (basis.dim() != layout.local_dim()) {
        throw InvalidParameter("basis dimension does not match the layout");
    }
    bool any = false;
    for (const cplx& c : coefficients) {
        if (std::abs(c) > 0.0) any = true;
    }
    if (!any) {
        throw InvalidParameter("all-zero coefficient list");
    }
    const int n = layout.n_processors;
    std::vector<cplx> amps(layout.dim(), cplx{0.0, 0.0});
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        if (std::abs(coefficients[i]) == 0.0) continue;
        for (std::size_t b = 0; b < amps.size(); ++b) {
            cplx term = coefficients[i];
            for (int p = 1; p <= n; ++p) {
                term *= basis.vector(i)[layout.local_index(b, p)];
                if (term == cplx{0.0, 0.0}) break;
            }
            amps[b] += term;
        }
    }
    return StateVector(layout, std::move(amps));
}

}  // namespace anonq
