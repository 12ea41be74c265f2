#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "kernels_impl.hpp"
#include "longtail/log.hpp"
#include "longtail/simd/kernels.hpp"

namespace longtail::simd {

namespace {

constexpr Kernels kScalar{Isa::scalar, "scalar", detail::dot_scalar, detail::axpy_scalar, detail::syr_scalar};
#if defined(LONGTAIL_HAVE_AVX2)
constexpr Kernels kAvx2{Isa::avx2, "avx2", detail::dot_avx2, detail::axpy_avx2, detail::syr_avx2};
#endif
#if defined(LONGTAIL_HAVE_NEON)
constexpr Kernels kNeon{Isa::neon, "neon", detail::dot_neon, detail::axpy_neon, detail::syr_neon};
#endif

const Kernels* best_available() {
    if (const char* env = std::getenv("LONGTAIL_SIMD")) {
        const std::string_view want(env);
        for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
            const Kernels* k = kernels_for(isa);
            if (k && want == k->name) return k;
        }
        log().warn("LONGTAIL_SIMD={} not available, using automatic selection", want);
    }
    if (const Kernels* k = avx2_kernels()) return k;
    if (const Kernels* k = neon_kernels()) return k;
    return &kScalar;
}

std::atomic<const Kernels*>& slot() {
    static std::atomic<const Kernels*> current{best_available()};
    return current;
}

}  // namespace

const Kernels& scalar_kernels() { return kScalar; }

const Kernels* avx2_kernels() {
#if defined(LONGTAIL_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return supported ? &kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

const Kernels* neon_kernels() {
#if defined(LONGTAIL_HAVE_NEON)
    return &kNeon;  // mandatory on AArch64
#else
    return nullptr;
#endif
}

const Kernels* kernels_for(Isa isa) {
    switch (isa) {
        case Isa::scalar: return &kScalar;
        case Isa::avx2: return avx2_kernels();
        case Isa::neon: return neon_kernels();
    }
    return nullptr;
}

const Kernels& active() { return *slot().load(std::memory_order_acquire); }

void set_active(Isa isa) {
    const Kernels* k = kernels_for(isa);
    if (!k) throw std::invalid_argument("requested SIMD kernels are not available on this machine");
    slot().store(k, std::memory_order_release);
}

}  // namespace longtail::simd
