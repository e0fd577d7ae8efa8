#include "ncforge/kernels.hpp"

#include "ncforge/errors.hpp"

namespace ncforge::kernels {

namespace scalar {

std::uint64_t count_le(std::span<const std::uint64_t> values, std::uint64_t bound)
{
    std::uint64_t n = 0;
    for (const std::uint64_t v : values) n += (v <= bound);
    return n;
}

std::uint64_t count_nonzero(std::span<const std::uint8_t> flags)
{
    std::uint64_t n = 0;
    for (const std::uint8_t f : flags) n += (f != 0);
    return n;
}

}  // namespace scalar

#ifndef NCFORGE_HAVE_AVX2_KERNELS
namespace avx2 {
std::uint64_t count_le(std::span<const std::uint64_t>, std::uint64_t)
{
    throw DomainError("AVX2 kernels are not compiled into this build");
}
std::uint64_t count_nonzero(std::span<const std::uint8_t>)
{
    throw DomainError("AVX2 kernels are not compiled into this build");
}
}  // namespace avx2
#endif

bool isa_available(Isa isa)
{
    switch (isa) {
    case Isa::scalar:
        return true;
    case Isa::avx2:
#ifdef NCFORGE_HAVE_AVX2_KERNELS
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    }
    return false;
}

Isa detected_isa()
{
    static const Isa best = isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
    return best;
}

std::string_view isa_name(Isa isa)
{
    return isa == Isa::avx2 ? "avx2" : "scalar";
}

std::uint64_t count_le(std::span<const std::uint64_t> values, std::uint64_t bound, Isa isa)
{
    if (isa == Isa::avx2) {
        if (!isa_available(Isa::avx2)) throw DomainError("AVX2 not available on this CPU");
        return avx2::count_le(values, bound);
    }
    return scalar::count_le(values, bound);
}

std::uint64_t count_nonzero(std::span<const std::uint8_t> flags, Isa isa)
{
    if (isa == Isa::avx2) {
        if (!isa_available(Isa::avx2)) throw DomainError("AVX2 not available on this CPU");
        return avx2::count_nonzero(flags);
    }
    return scalar::count_nonzero(flags);
}

std::uint64_t count_le(std::span<const std::uint64_t> values, std::uint64_t bound)
{
    return count_le(values, bound, detected_isa());
}

std::uint64_t count_nonzero(std::span<const std::uint8_t> flags)
{
    return count_nonzero(flags, detected_isa());
}

}  // namespace ncforge::kernels
