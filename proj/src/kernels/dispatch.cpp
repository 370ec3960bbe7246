#include "belief/kernels.hpp"

#include "belief/error.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace belief::kernels {

#ifndef BELIEF_HAVE_AVX2_TU
namespace avx2 {
// Not built on this target; never selected because isa_available() is false.
double masked_sum(Values values, MaskWords mask) noexcept
{
    return scalar::masked_sum(values, mask);
}
ConditionalSums conditional_sums(Values values, MaskWords event, MaskWords context) noexcept
{
    return scalar::conditional_sums(values, event, context);
}
} // namespace avx2
#endif

namespace {

bool cpu_has_avx2() noexcept
{
#if defined(BELIEF_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa detect() noexcept
{
    const bool avx2_ok = cpu_has_avx2();
    if (const char* env = std::getenv("BELIEF_KERNEL")) {
        const std::string want(env);
        if (want == "scalar")
            return Isa::scalar;
        if (want == "avx2" && avx2_ok)
            return Isa::avx2;
    }
    return avx2_ok ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() noexcept
{
    static std::atomic<Isa> isa{detect()};
    return isa;
}

} // namespace

bool isa_available(Isa isa) noexcept
{
    return isa == Isa::scalar || cpu_has_avx2();
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa)
{
    if (!isa_available(isa))
        throw Error(ErrorCode::invalid_argument,
                    "kernel variant " + std::string(isa_name(isa)) + " not available on this CPU");
    current().store(isa, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) noexcept
{
    return isa == Isa::avx2 ? "avx2" : "scalar";
}

double masked_sum(Values values, MaskWords mask) noexcept
{
    return active_isa() == Isa::avx2 ? avx2::masked_sum(values, mask)
                                     : scalar::masked_sum(values, mask);
}

ConditionalSums conditional_sums(Values values, MaskWords event, MaskWords context) noexcept
{
    return active_isa() == Isa::avx2 ? avx2::conditional_sums(values, event, context)
                                     : scalar::conditional_sums(values, event, context);
}

} // namespace belief::kernels
