#include "belief/kernels.hpp"

#include <cstddef>

namespace belief::kernels::scalar {

namespace {

inline double bit_select(std::uint64_t word, std::size_t bit, double v) noexcept
{
    return ((word >> bit) & 1u) ? v : 0.0;
}

inline double reduce(const double (&lanes)[4]) noexcept
{
    return (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
}

} // namespace

double masked_sum(Values values, MaskWords mask) noexcept
{
    double lanes[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < values.size(); ++i)
        lanes[i % 4] += bit_select(mask[i / 64], i % 64, values[i]);
    return reduce(lanes);
}

ConditionalSums conditional_sums(Values values, MaskWords event, MaskWords context) noexcept
{
    double joint[4] = {0.0, 0.0, 0.0, 0.0};
    double ctx[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::uint64_t c = context[i / 64];
        const std::uint64_t j = c & event[i / 64];
        ctx[i % 4] += bit_select(c, i % 64, values[i]);
        joint[i % 4] += bit_select(j, i % 64, values[i]);
    }
    return {reduce(joint), reduce(ctx)};
}

} // namespace belief::kernels::scalar
