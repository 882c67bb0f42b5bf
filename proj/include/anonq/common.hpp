#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace anonq {

using cplx = std::complex<double>;

// Numerical tolerances, one per contract. These are part of the library's
// observable behavior (reports print them for provenance), so they live in
// one place.
namespace tol {
inline constexpr double norm = 1e-12;         // state normalization
inline constexpr double ortho = 1e-10;        // basis/projector/unitary checks
inline constexpr double coeff = 1e-10;        // "nonzero coefficient" cutoff
inline constexpr double prune = 1e-12;        // measurement branch pruning
inline constexpr double prob_sum = 1e-9;      // per-node probability conservation
inline constexpr double residual = 1e-8;      // family classification residual
inline constexpr double purity = 1e-9;        // product-state purity margin
inline constexpr double fairness = 1e-9;      // leader-probability deviation
inline constexpr double phase_floor = 1e-12;  // "first nonzero" for phase canonicalization
}  // namespace tol

namespace defaults {
inline constexpr int grid_resolution = 12;
inline constexpr int random_trials = 1000;
inline constexpr int max_rounds = 16;
inline constexpr std::size_t node_budget = 1u << 20;
inline constexpr std::uint64_t seed = 1;
}  // namespace defaults

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad argument values (n < 2, length mismatches, unknown strategy names, ...).
struct InvalidParameter : Error {
    using Error::Error;
};

// Leader/follower label sets that do not split the local space.
struct InvalidFamily : Error {
    using Error::Error;
};

// Non-unitary operators, incomplete projector sets.
struct InvalidOperator : Error {
    using Error::Error;
};

// Structurally unusable inputs (layout mismatch, non-anonymous state where
// anonymity is a precondition, wrong kind of tree).
struct InvalidInput : Error {
    using Error::Error;
};

}  // namespace anonq
