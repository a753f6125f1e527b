#include "homlab/simd/kernels.hpp"

#include <bit>

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace homlab::simd {

#if defined(__AVX2__)

namespace {

inline __m256i popcount_bytes(__m256i v) {
    const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4, 0, 1, 1, 2, 1, 2, 2,
                                            3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    const __m256i lo = _mm256_and_si256(v, low_mask);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
    return _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
}

std::uint64_t and_popcount_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
    std::size_t i = 0;
    __m256i acc = _mm256_setzero_si256();
    for (; i + 4 <= words; i += 4) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        const __m256i counts = popcount_bytes(_mm256_and_si256(va, vb));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(counts, _mm256_setzero_si256()));
    }
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::uint64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < words; ++i)
        total += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    return total;
}

bool and_into_avx2(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
    std::size_t i = 0;
    __m256i any = _mm256_setzero_si256();
    for (; i + 4 <= words; i += 4) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        const __m256i r = _mm256_and_si256(va, vb);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), r);
        any = _mm256_or_si256(any, r);
    }
    bool nonzero = !_mm256_testz_si256(any, any);
    for (; i < words; ++i) {
        dst[i] = a[i] & b[i];
        nonzero |= dst[i] != 0;
    }
    return nonzero;
}

// x holds eight signed lanes in [0, 2^31); returns x mod m for m < 2^15.
inline __m256i reduce_lanes(__m256i x, __m256d inv_m, __m256i m) {
    const __m256d lo = _mm256_cvtepi32_pd(_mm256_castsi256_si128(x));
    const __m256d hi = _mm256_cvtepi32_pd(_mm256_extracti128_si256(x, 1));
    const __m128i qlo = _mm256_cvttpd_epi32(_mm256_mul_pd(lo, inv_m));
    const __m128i qhi = _mm256_cvttpd_epi32(_mm256_mul_pd(hi, inv_m));
    const __m256i q = _mm256_set_m128i(qhi, qlo);
    __m256i r = _mm256_sub_epi32(x, _mm256_mullo_epi32(q, m));
    // The quotient estimate is off by at most one in either direction.
    const __m256i negative = _mm256_cmpgt_epi32(_mm256_setzero_si256(), r);
    r = _mm256_add_epi32(r, _mm256_and_si256(negative, m));
    const __m256i too_big = _mm256_cmpgt_epi32(r, _mm256_sub_epi32(m, _mm256_set1_epi32(1)));
    return _mm256_sub_epi32(r, _mm256_and_si256(too_big, m));
}

void axpy_mod_avx2(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t scale, std::uint32_t m,
                   std::size_t n) {
    std::size_t i = 0;
    if (m < kVectorModulusLimit) {
        const __m256d inv = _mm256_set1_pd(1.0 / static_cast<double>(m));
        const __m256i vm = _mm256_set1_epi32(static_cast<int>(m));
        const __m256i vs = _mm256_set1_epi32(static_cast<int>(scale));
        for (; i + 8 <= n; i += 8) {
            const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
            const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
            const __m256i t = _mm256_add_epi32(d, _mm256_mullo_epi32(s, vs));
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), reduce_lanes(t, inv, vm));
        }
    }
    for (; i < n; ++i)
        dst[i] = static_cast<std::uint32_t>((dst[i] + static_cast<std::uint64_t>(scale) * src[i]) % m);
}

void mul_mod_avx2(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t m, std::size_t n) {
    std::size_t i = 0;
    if (m < kVectorModulusLimit) {
        const __m256d inv = _mm256_set1_pd(1.0 / static_cast<double>(m));
        const __m256i vm = _mm256_set1_epi32(static_cast<int>(m));
        for (; i + 8 <= n; i += 8) {
            const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
            const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i),
                                reduce_lanes(_mm256_mullo_epi32(d, s), inv, vm));
        }
    }
    for (; i < n; ++i)
        dst[i] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(dst[i]) * src[i] % m);
}

std::uint32_t sum_mod_avx2(const std::uint32_t* src, std::uint32_t m, std::size_t n) {
    std::size_t i = 0;
    std::uint64_t acc = 0;
    if (m < kVectorModulusLimit) {
        const __m256d inv = _mm256_set1_pd(1.0 / static_cast<double>(m));
        const __m256i vm = _mm256_set1_epi32(static_cast<int>(m));
        __m256i lanes = _mm256_setzero_si256();
        for (; i + 8 <= n; i += 8) {
            const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
            lanes = reduce_lanes(_mm256_add_epi32(lanes, s), inv, vm);
        }
        alignas(32) std::uint32_t out[8];
        _mm256_store_si256(reinterpret_cast<__m256i*>(out), lanes);
        for (std::uint32_t v : out)
            acc += v;
        acc %= m;
    }
    for (; i < n; ++i)
        acc = (acc + src[i]) % m;
    return static_cast<std::uint32_t>(acc);
}

} // namespace

const KernelTable* avx2_kernels() {
    static const KernelTable table{"avx2", and_popcount_avx2, and_into_avx2, axpy_mod_avx2, mul_mod_avx2,
                                   sum_mod_avx2};
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
    return supported ? &table : nullptr;
}

#else

const KernelTable* avx2_kernels() { return nullptr; }

#endif

} // namespace homlab::simd
