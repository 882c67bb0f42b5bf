#pragma once

#include <string>
#include <vector>

#include "anonq/basis.hpp"
#include "anonq/state.hpp"

namespace anonq {

// W_n: equal superposition of the n weight-1 strings, layout (n, 1).
StateVector make_w(int n);

// Complement of W_n: equal superposition of the n weight-(n-1) strings.
StateVector make_w_complement(int n);

// GHZ_n: (|0...0> + |1...1>)/sqrt(2), layout (n, 1).
StateVector make_ghz(int n);

// Equal superposition over the orbit of a computational pattern under all
// permutations of processor blocks (distinct strings counted once). The
// pattern is a bit string of length n*m, most significant qubit first.
StateVector make_perm_closure(const std::string& pattern, const ProcessorLayout& layout);

// Perm-closure of phi_{labels[0]} x ... x phi_{labels[n-1]} expressed in the
// computational basis. Building block for the generalized families.
StateVector perm_closure_labels(const std::vector<std::size_t>& labels,
                                const LocalBasis& basis, const ProcessorLayout& layout);

// W-like family: Perm(phi_leader x phi_f2 x ... x phi_fn). The leader label
// must not occur among the follower labels (H = L (+) F).
StateVector make_generalized_w(std::size_t leader_label,
                               const std::vector<std::size_t>& follower_labels,
                               const LocalBasis& basis, const ProcessorLayout& layout);

// GHZ-like family: sum_i alpha_i phi_i^{(x)n}, normalized.
StateVector make_generalized_ghz(const std::vector<cplx>& coefficients,
                                 const LocalBasis& basis, const ProcessorLayout& layout);

}  // namespace anonq
