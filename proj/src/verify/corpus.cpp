#include <algorithm>
#include <random>

#include "anonq/ops.hpp"
#include "anonq/states.hpp"
#include "anonq/verify.hpp"

namespace anonq::verify {

namespace {

// Random anonymous state: seeded complex Gaussian vector symmetrized over all
// block permutations, then normalized. Symmetrization keeps exactly the
// permutation-invariant component, so anonymity holds by construction.
StateVector random_anonymous_state(int n, std::mt19937_64& rng) {
    ProcessorLayout layout(n, 1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    while (true) {
        std::vector<cplx> raw(layout.dim());
        for (cplx& a : raw) {
            a = cplx{gauss(rng), gauss(rng)};
        }
        std::vector<cplx> sym(layout.dim(), cplx{0.0, 0.0});
        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int p = 0; p < n; ++p) perm[static_cast<std::size_t>(p)] = p + 1;
        do {
            for (std::size_t b = 0; b < raw.size(); ++b) {
                sym[layout.permute_index(b, perm)] += raw[b];
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        double norm2 = 0.0;
        for (const cplx& a : sym) norm2 += std::norm(a);
        if (norm2 > 1e-9) {
            return StateVector(layout, std::move(sym));
        }
        // Symmetrization annihilated the draw; try again.
    }
}

}  // namespace

std::vector<CorpusEntry> build_corpus(int max_n, int random_count, std::uint64_t seed) {
    std::vector<CorpusEntry> corpus;
    // Every Perm-closure orbit of an m=1 pattern is determined by its weight.
    for (int n = 2; n <= max_n; ++n) {
        for (int w = 0; w <= n; ++w) {
            std::string pattern(static_cast<std::size_t>(n), '0');
            for (int i = 0; i < w; ++i) pattern[static_cast<std::size_t>(i)] = '1';
            corpus.push_back({"perm:" + pattern,
                              make_perm_closure(pattern, ProcessorLayout(n, 1))});
        }
    }
    for (int n = 2; n <= std::max(max_n, 6); ++n) {
        corpus.push_back({"w:" + std::to_string(n), make_w(n)});
        corpus.push_back({"ghz:" + std::to_string(n), make_ghz(n)});
    }
    std::mt19937_64 rng(seed);
    for (int i = 0; i < random_count; ++i) {
        const int n = 2 + (i % std::max(1, max_n - 1));
        corpus.push_back({"random:" + std::to_string(i) + ":n=" + std::to_string(n),
                          random_anonymous_state(n, rng)});
    }
    return corpus;
}

}  // namespace anonq::verify
