#include "ncforge/config.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "ncforge/errors.hpp"

namespace ncforge {

void MemoryBudget::require(std::size_t needed, std::string_view what) const
{
    if (needed > bytes) {
        throw ResourceError(std::string(what) + " needs " + std::to_string(needed) +
                            " bytes, over the memory budget of " + std::to_string(bytes) +
                            " bytes; raise --limit-memory or use the segmented path");
    }
}

MemoryBudget parse_memory_budget(std::string_view text)
{
    if (text.empty()) throw DomainError("empty memory budget");
    std::size_t scale = 1;
    const char suffix = char(std::toupper(static_cast<unsigned char>(text.back())));
    if (suffix == 'K' || suffix == 'M' || suffix == 'G') {
        scale = suffix == 'K' ? (std::size_t(1) << 10) : suffix == 'M' ? (std::size_t(1) << 20) : (std::size_t(1) << 30);
        text.remove_suffix(1);
    }
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
        throw DomainError("malformed memory budget: " + std::string(text));
    }
    return MemoryBudget{value * scale};
}

unsigned worker_count()
{
    if (const char* env = std::getenv("NC_FORGE_THREADS")) {
        unsigned n = 0;
        const std::string_view s(env);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
        if (ec == std::errc() && ptr == s.data() + s.size() && n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_blocks(std::size_t blocks, const std::function<void(std::size_t)>& fn)
{
    const std::size_t workers = std::min<std::size_t>(worker_count(), blocks);
    if (workers <= 1) {
        for (std::size_t b = 0; b < blocks; ++b) fn(b);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t b = next++; b < blocks; b = next++) {
            try {
                fn(b);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = blocks;
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace ncforge
