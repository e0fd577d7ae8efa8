#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>

namespace ncforge {

// Hard ceiling on every limit handled by the tables.
inline constexpr std::uint64_t kMaxLimit = std::uint64_t(1) << 40;

inline constexpr std::size_t kDefaultSegmentSize = std::size_t(1) << 20;

struct MemoryBudget {
    std::size_t bytes = std::size_t(1) << 30;

    // Throws ResourceError naming `what` when `needed` exceeds the budget.
    void require(std::size_t needed, std::string_view what) const;
};

// Parses "512M", "2G", "1048576" etc. Throws DomainError on malformed input.
MemoryBudget parse_memory_budget(std::string_view text);

// Worker count: NC_FORGE_THREADS when set and nonzero, hardware concurrency otherwise.
unsigned worker_count();

// Runs fn(block_index) for block_index in [0, blocks) on up to worker_count() threads.
// Callers write results into per-block slots so assembly order is fixed.
void parallel_blocks(std::size_t blocks, const std::function<void(std::size_t)>& fn);

}  // namespace ncforge
