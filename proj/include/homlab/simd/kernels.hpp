#pragma once

// Data-parallel inner loops shared by the counting and linear-algebra code.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant.  The variant is chosen once at runtime (CPUID), and can be forced
// back to the scalar path with HOMLAB_SIMD=scalar.  Both paths must agree
// bit-for-bit; tests/test_simd.cpp checks this on random inputs.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace homlab::simd {

/// Moduli up to this bound take the vector path in the *_mod kernels.
/// Larger moduli are handled by the scalar loop inside every variant.
inline constexpr std::uint32_t kVectorModulusLimit = 1u << 15;

struct KernelTable {
    std::string_view name;

    /// popcount(a & b) over `words` 64-bit words.
    std::uint64_t (*and_popcount)(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
    /// dst = a & b; returns true iff the result is nonzero.
    bool (*and_into)(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
    /// dst[i] = (dst[i] + scale * src[i]) mod m; entries and scale already reduced.
    void (*axpy_mod)(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t scale, std::uint32_t m,
                     std::size_t n);
    /// dst[i] = dst[i] * src[i] mod m.
    void (*mul_mod)(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t m, std::size_t n);
    /// sum of src[i] mod m.
    std::uint32_t (*sum_mod)(const std::uint32_t* src, std::uint32_t m, std::size_t n);
};

const KernelTable& scalar_kernels();
/// Null when the build or the CPU lacks AVX2.
const KernelTable* avx2_kernels();

/// Table selected for this process.
const KernelTable& kernels();

// Span conveniences over the active table.

inline std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    return kernels().and_popcount(a.data(), b.data(), a.size());
}

inline bool and_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> a,
                     std::span<const std::uint64_t> b) {
    return kernels().and_into(dst.data(), a.data(), b.data(), dst.size());
}

inline void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t scale,
                     std::uint32_t m) {
    kernels().axpy_mod(dst.data(), src.data(), scale, m, dst.size());
}

inline void mul_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t m) {
    kernels().mul_mod(dst.data(), src.data(), m, dst.size());
}

inline std::uint32_t sum_mod(std::span<const std::uint32_t> src, std::uint32_t m) {
    return kernels().sum_mod(src.data(), m, src.size());
}

} // namespace homlab::simd
