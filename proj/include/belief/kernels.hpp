#pragma once

// Masked reductions over the probability table.  Every probability the oracle
// reports is a ratio of two such sums, so these loops are the hot path.
//
// All variants accumulate in four interleaved lanes (lane = index mod 4) and
// reduce as (l0 + l2) + (l1 + l3).  The scalar reference follows exactly the
// order the vector code uses, so the variants agree bit for bit and results
// do not depend on which one the dispatcher picked.

#include <cstdint>
#include <span>
#include <string_view>

namespace belief::kernels {

enum class Isa { scalar, avx2 };

struct ConditionalSums {
    double joint = 0.0;   // sum over worlds in event AND context
    double context = 0.0; // sum over worlds in context
};

using MaskWords = std::span<const std::uint64_t>;
using Values = std::span<const double>;

namespace scalar {
double masked_sum(Values values, MaskWords mask) noexcept;
ConditionalSums conditional_sums(Values values, MaskWords event, MaskWords context) noexcept;
} // namespace scalar

namespace avx2 {
double masked_sum(Values values, MaskWords mask) noexcept;
ConditionalSums conditional_sums(Values values, MaskWords event, MaskWords context) noexcept;
} // namespace avx2

// Dispatched entry points.  The ISA is chosen once from CPU features; the
// BELIEF_KERNEL environment variable ("scalar" or "avx2") overrides it.
double masked_sum(Values values, MaskWords mask) noexcept;
ConditionalSums conditional_sums(Values values, MaskWords event, MaskWords context) noexcept;

bool isa_available(Isa isa) noexcept;
Isa active_isa() noexcept;
// Throws belief::Error if the ISA is not usable on this machine.
void force_isa(Isa isa);
std::string_view isa_name(Isa isa) noexcept;

} // namespace belief::kernels
