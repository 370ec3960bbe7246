#include "belief/kernels.hpp"

#include <immintrin.h>

#include <cstddef>

namespace belief::kernels::avx2 {

namespace {

// Expands four mask bits (starting at `bit` of `word`) into a lane mask.
inline __m256d lane_mask(std::uint64_t word, std::size_t bit) noexcept
{
    const __m256i select = _mm256_set_epi64x(8, 4, 2, 1);
    const __m256i nibble = _mm256_set1_epi64x(static_cast<long long>((word >> bit) & 0xFu));
    return _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(nibble, select), select));
}

inline double reduce(__m256d acc, std::size_t tail_begin, Values values,
                     MaskWords mask) noexcept
{
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    for (std::size_t i = tail_begin; i < values.size(); ++i)
        lanes[i % 4] += ((mask[i / 64] >> (i % 64)) & 1u) ? values[i] : 0.0;
    return (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
}

} // namespace

double masked_sum(Values values, MaskWords mask) noexcept
{
    const std::size_t n = values.size();
    const std::size_t body = n - n % 4;
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < body; i += 4) {
        const __m256d v = _mm256_loadu_pd(values.data() + i);
        acc = _mm256_add_pd(acc, _mm256_and_pd(v, lane_mask(mask[i / 64], i % 64)));
    }
    return reduce(acc, body, values, mask);
}

ConditionalSums conditional_sums(Values values, MaskWords event, MaskWords context) noexcept
{
    const std::size_t n = values.size();
    const std::size_t body = n - n % 4;
    __m256d joint = _mm256_setzero_pd();
    __m256d ctx = _mm256_setzero_pd();
    for (std::size_t i = 0; i < body; i += 4) {
        const __m256d v = _mm256_loadu_pd(values.data() + i);
        const std::uint64_t c = context[i / 64];
        ctx = _mm256_add_pd(ctx, _mm256_and_pd(v, lane_mask(c, i % 64)));
        joint = _mm256_add_pd(joint, _mm256_and_pd(v, lane_mask(c & event[i / 64], i % 64)));
    }
    if (body == n)
        return {reduce(joint, n, values, event), reduce(ctx, n, values, context)};

    // Short tables (fewer than four worlds remain): finish in scalar form with
    // the combined mask for the joint lanes.
    alignas(32) double jl[4];
    alignas(32) double cl[4];
    _mm256_store_pd(jl, joint);
    _mm256_store_pd(cl, ctx);
    for (std::size_t i = body; i < n; ++i) {
        const std::uint64_t c = context[i / 64];
        const std::uint64_t j = c & event[i / 64];
        cl[i % 4] += ((c >> (i % 64)) & 1u) ? values[i] : 0.0;
        jl[i % 4] += ((j >> (i % 64)) & 1u) ? values[i] : 0.0;
    }
    return {(jl[0] + jl[2]) + (jl[1] + jl[3]), (cl[0] + cl[2]) + (cl[1] + cl[3])};
}

} // namespace belief::kernels::avx2
