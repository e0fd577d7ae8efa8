// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <bit>

#include "ncforge/kernels.hpp"

namespace ncforge::kernels::avx2 {

std::uint64_t count_le(std::span<const std::uint64_t> values, std::uint64_t bound)
{
    const std::size_t n = values.size();
    const std::uint64_t* data = values.data();
    const __m256i limit = _mm256_set1_epi64x(static_cast<long long>(bound));
    __m256i above = _mm256_setzero_si256();

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + i));
        // signed compare is exact while both sides stay below 2^63
        above = _mm256_sub_epi64(above, _mm256_cmpgt_epi64(v, limit));
    }
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), above);
    std::uint64_t count = i - (lanes[0] + lanes[1] + lanes[2] + lanes[3]);

    for (; i < n; ++i) count += (data[i] <= bound);
    return count;
}

std::uint64_t count_nonzero(std::span<const std::uint8_t> flags)
{
    const std::size_t n = flags.size();
    const std::uint8_t* data = flags.data();
    const __m256i zero = _mm256_setzero_si256();

    std::uint64_t count = 0;
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + i));
        const auto zeros = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(v, zero)));
        count += 32 - std::popcount(zeros);
    }
    for (; i < n; ++i) count += (data[i] != 0);
    return count;
}

}  // namespace ncforge::kernels::avx2
