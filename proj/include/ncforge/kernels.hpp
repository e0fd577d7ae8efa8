#pragma once

// Data-parallel counting loops used by the sieves and smooth-number counters.
// Each kernel has a scalar reference and, on x86-64, an AVX2 variant selected
// at runtime. Both must return identical results for every input.

#include <cstdint>
#include <span>
#include <string_view>

namespace ncforge::kernels {

enum class Isa { scalar, avx2 };

// Best instruction set supported by this build and this CPU.
Isa detected_isa();
bool isa_available(Isa isa);
std::string_view isa_name(Isa isa);

// Number of entries with value <= bound. Entries must be below 2^63.
std::uint64_t count_le(std::span<const std::uint64_t> values, std::uint64_t bound);
std::uint64_t count_le(std::span<const std::uint64_t> values, std::uint64_t bound, Isa isa);

std::uint64_t count_nonzero(std::span<const std::uint8_t> flags);
std::uint64_t count_nonzero(std::span<const std::uint8_t> flags, Isa isa);

namespace scalar {
std::uint64_t count_le(std::span<const std::uint64_t> values, std::uint64_t bound);
std::uint64_t count_nonzero(std::span<const std::uint8_t> flags);
}  // namespace scalar

namespace avx2 {
std::uint64_t count_le(std::span<const std::uint64_t> values, std::uint64_t bound);
std::uint64_t count_nonzero(std::span<const std::uint8_t> flags);
}  // namespace avx2

}  // namespace ncforge::kernels
