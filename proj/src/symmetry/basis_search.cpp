#include "anonq/basis_search.hpp"

#include <cmath>
#include <future>
#include <numbers>
#include <thread>
#include <vector>

namespace anonq::symmetry {

BasisGrid::BasisGrid(int m, int resolution) : m_(m), resolution_(resolution) {
    if (m < 1 || resolution < 1) {
        throw InvalidParameter("basis grid requires m >= 1 and resolution >= 1");
    }
    grid_count_ = 1;
    for (int q = 0; q < 2 * m; ++q) {
        grid_count_ *= static_cast<std::size_t>(resolution);
    }
}

LocalBasis BasisGrid::basis(std::size_t index) const {
    if (index == grid_count_) {
        return LocalBasis::fourier(m_);
    }
    if (index > grid_count_) {
        throw InvalidParameter("basis grid index out of range");
    }
    std::vector<double> thetas(static_cast<std::size_t>(m_));
    std::vector<double> phis(static_cast<std::size_t>(m_));
    const double theta_step = (std::numbers::pi / 2.0) / resolution_;
    const double phi_step = (2.0 * std::numbers::pi) / resolution_;
    // index digits, most significant first: (theta_1, phi_1, theta_2, phi_2, ...)
    std::size_t rem = index;
    for (int q = m_ - 1; q >= 0; --q) {
        const std::size_t kphi = rem % static_cast<std::size_t>(resolution_);
        rem /= static_cast<std::size_t>(resolution_);
        const std::size_t ktheta = rem % static_cast<std::size_t>(resolution_);
        rem /= static_cast<std::size_t>(resolution_);
        thetas[static_cast<std::size_t>(q)] = static_cast<double>(ktheta) * theta_step;
        phis[static_cast<std::size_t>(q)] = static_cast<double>(kphi) * phi_step;
    }
    return LocalBasis::rotation_product(thetas, phis);
}

LocalBasis random_basis(int m, std::uint64_t seed, int trial) {
    // splitmix-style stream separation per trial
    std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(trial + 1));
    std::mt19937_64 rng(s);
    return LocalBasis::random(m, rng);
}

std::optional<std::size_t> first_index_where(std::size_t count,
                                             const std::function<bool(std::size_t)>& fn) {
    const unsigned hw = std::thread::hardware_concurrency();
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(hw, 8));
    if (workers == 1 || count < 64) {
        for (std::size_t i = 0; i < count; ++i) {
            if (fn(i)) return i;
        }
        return std::nullopt;
    }
    // Interleaved shards; each worker reports its smallest hit and we take
    // the global minimum, so the result matches a sequential scan.
    std::vector<std::future<std::optional<std::size_t>>> futures;
    futures.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        futures.push_back(std::async(std::launch::async, [&, w]() -> std::optional<std::size_t> {
            for (std::size_t i = w; i < count; i += workers) {
                if (fn(i)) return i;
            }
            return std::nullopt;
        }));
    }
    std::optional<std::size_t> best;
    for (auto& f : futures) {
        const auto hit = f.get();
        if (hit && (!best || *hit < *best)) best = hit;
    }
    return best;
}

}  // namespace anonq::symmetry
