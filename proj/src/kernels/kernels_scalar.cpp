// Reference kernels. Plain loops, no intrinsics; the AVX2 variants are
// checked against these.

#include <vector>

#include "anonq/kernels.hpp"

namespace anonq::kernels {

namespace {

double norm_sq_scalar(const cplx* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    }
    return s;
}

void scale_scalar(cplx* a, std::size_t n, cplx f) {
    for (std::size_t i = 0; i < n; ++i) {
        a[i] *= f;
    }
}

cplx inner_scalar(const cplx* a, const cplx* b, std::size_t n) {
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

void apply_matrix_scalar(cplx* a, std::size_t dim, const cplx* m, std::size_t d,
                         std::size_t stride) {
    const std::size_t block = d * stride;
    std::vector<cplx> v(d);
    for (std::size_t base = 0; base < dim; base += block) {
        for (std::size_t s = 0; s < stride; ++s) {
            cplx* cell = a + base + s;
            for (std::size_t j = 0; j < d; ++j) {
                v[j] = cell[j * stride];
            }
            for (std::size_t j = 0; j < d; ++j) {
                cplx acc{0.0, 0.0};
                const cplx* row = m + j * d;
                for (std::size_t k = 0; k < d; ++k) {
                    acc += row[k] * v[k];
                }
                cell[j * stride] = acc;
            }
        }
    }
}

}  // namespace

const Backend& scalar_backend() {
    static const Backend backend{
        "scalar", &norm_sq_scalar, &scale_scalar, &inner_scalar, &apply_matrix_scalar,
    };
    return backend;
}

}  // namespace anonq::kernels
