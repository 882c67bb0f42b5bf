#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "anonq/basis.hpp"
#include "anonq/common.hpp"

namespace anonq::symmetry {

struct SearchBudget {
    int grid_resolution = defaults::grid_resolution;
    int trials = defaults::random_trials;
    std::uint64_t seed = defaults::seed;
};

// Deterministic enumeration of candidate product bases for one local block:
// index 0..grid-1 are products of per-qubit rotations with theta on a
// [0, pi/2) grid and phi on a [0, 2*pi) grid (index 0 is the computational
// basis), followed by the discrete Fourier basis over the whole block.
// Fully general (entangled) local bases only appear in the random phase.
class BasisGrid {
public:
    BasisGrid(int m, int resolution);

    std::size_t grid_count() const { return grid_count_; }
    std::size_t total() const { return grid_count_ + 1; }  // + Fourier

    LocalBasis basis(std::size_t index) const;

private:
    int m_;
    int resolution_;
    std::size_t grid_count_;
};

// Random basis for trial t under a budget seed; independent per-trial
// generators keep the enumeration order-free so searches can be sharded.
LocalBasis random_basis(int m, std::uint64_t seed, int trial);

// Evaluates fn(0..count-1), possibly sharded across threads, and returns the
// smallest index where fn returns a value. Results are merged by index so the
// outcome is independent of scheduling.
std::optional<std::size_t> first_index_where(std::size_t count,
                                             const std::function<bool(std::size_t)>& fn);

}  // namespace anonq::symmetry
