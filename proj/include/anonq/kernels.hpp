#pragma once

#include <cstddef>
#include <string>

#include "anonq/common.hpp"

namespace anonq::kernels {

// The hot inner loops of the statevector layer. Every kernel has a scalar
// reference implementation and, on x86-64, an AVX2 variant; the active
// backend is chosen once at startup (or forced via set_backend / the
// ANONQ_KERNELS environment variable, values "scalar" / "avx2"). The two
// implementations are equivalence-tested against each other; results may
// differ only in floating-point association order.
struct Backend {
    std::string name;

    // sum_i |a_i|^2
    double (*norm_sq)(const cplx* a, std::size_t n);

    // a_i *= f
    void (*scale)(cplx* a, std::size_t n, cplx f);

    // sum_i conj(a_i) * b_i
    cplx (*inner)(const cplx* a, const cplx* b, std::size_t n);

    // Applies a d x d row-major matrix to the middle axis of a statevector
    // viewed as (outer, d, stride): for every outer o and inner s,
    //   v_j = a[o*d*stride + j*stride + s]  (j = 0..d-1)
    // is replaced by m * v. dim must be a multiple of d*stride.
    void (*apply_matrix)(cplx* a, std::size_t dim, const cplx* m, std::size_t d,
                         std::size_t stride);
};

const Backend& scalar_backend();
#if defined(__x86_64__) || defined(_M_X64)
const Backend& avx2_backend();
bool avx2_available();
#endif

// Active backend (process-wide). Selection order: explicit set_backend,
// ANONQ_KERNELS env var, best available.
const Backend& active();
void set_backend(const std::string& name);  // "scalar" | "avx2" | "auto"

}  // namespace anonq::kernels
