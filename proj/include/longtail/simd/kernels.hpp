#pragma once

// Dense double-precision kernels used by the factor models.
//
// Every kernel has a scalar reference implementation; SIMD variants (AVX2+FMA
// on x86-64, NEON on AArch64) are selected at first use based on what the
// running CPU supports. LONGTAIL_SIMD=scalar|avx2|neon forces a choice.
// SIMD variants reassociate sums, so results agree with the scalar path to
// rounding, not bit for bit.

#include <cassert>
#include <cstddef>
#include <span>

namespace longtail::simd {

enum class Isa { scalar, avx2, neon };

struct Kernels {
    Isa isa;
    const char* name;
    /// sum_i a[i] * b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    /// y += alpha * x
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    /// a += alpha * x x^T, a is n x n row-major (both triangles updated)
    void (*syr)(double alpha, const double* x, double* a, std::size_t n);
};

const Kernels& scalar_kernels();
/// nullptr unless compiled in and supported by this CPU.
const Kernels* avx2_kernels();
const Kernels* neon_kernels();

const Kernels* kernels_for(Isa isa);

/// Kernel table used by the library.
const Kernels& active();

/// Switches the active table. Throws std::invalid_argument if `isa` is
/// unavailable. Not synchronized with concurrent kernel calls.
void set_active(Isa isa);

inline double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    return active().dot(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    assert(x.size() == y.size());
    active().axpy(alpha, x.data(), y.data(), x.size());
}

inline void syr(double alpha, std::span<const double> x, std::span<double> a) {
    assert(a.size() == x.size() * x.size());
    active().syr(alpha, x.data(), a.data(), x.size());
}

}  // namespace longtail::simd
