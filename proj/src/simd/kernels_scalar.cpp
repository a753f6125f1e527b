#include "homlab/simd/kernels.hpp"

#include <bit>

namespace homlab::simd {

namespace {

std::uint64_t and_popcount_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < words; ++i)
        total += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    return total;
}

bool and_into_scalar(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
    std::uint64_t any = 0;
    for (std::size_t i = 0; i < words; ++i) {
        dst[i] = a[i] & b[i];
        any |= dst[i];
    }
    return any != 0;
}

void axpy_mod_scalar(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t scale, std::uint32_t m,
                     std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        dst[i] = static_cast<std::uint32_t>((dst[i] + static_cast<std::uint64_t>(scale) * src[i]) % m);
}

void mul_mod_scalar(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t m, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        dst[i] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(dst[i]) * src[i] % m);
}

std::uint32_t sum_mod_scalar(const std::uint32_t* src, std::uint32_t m, std::size_t n) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < n; ++i)
        acc = (acc + src[i]) % m;
    return static_cast<std::uint32_t>(acc);
}

} // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{"scalar", and_popcount_scalar, and_into_scalar, axpy_mod_scalar,
                                   mul_mod_scalar, sum_mod_scalar};
    return table;
}

} // namespace homlab::simd
