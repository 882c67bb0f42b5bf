#include <cstdlib>

#include "anonq/kernels.hpp"

namespace anonq::kernels {

namespace {

const Backend* pick_default() {
#if defined(__x86_64__) || defined(_M_X64)
    if (const char* env = std::getenv("ANONQ_KERNELS")) {
        std::string want(env);
        if (want == "scalar") return &scalar_backend();
        if (want == "avx2" && avx2_available()) return &avx2_backend();
    }
    if (avx2_available()) return &avx2_backend();
#else
    if (const char* env = std::getenv("ANONQ_KERNELS")) {
        std::string want(env);
        if (want == "scalar") return &scalar_backend();
    }
#endif
    return &scalar_backend();
}

const Backend*& current() {
    static const Backend* backend = pick_default();
    return backend;
}

}  // namespace

const Backend& active() { return *current(); }

void set_backend(const std::string& name) {
    if (name == "scalar") {
        current() = &scalar_backend();
        return;
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (name == "avx2") {
        if (!avx2_available()) {
            throw InvalidParameter("avx2 backend requested but not supported by this CPU");
        }
        current() = &avx2_backend();
        return;
    }
#endif
    if (name == "auto") {
        current() = pick_default();
        return;
    }
    throw InvalidParameter("unknown kernel backend: " + name);
}

}  // namespace anonq::kernels
