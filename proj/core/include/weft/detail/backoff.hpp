#pragma once

#include <cstdint>
#include <thread>

namespace weft::detail {

inline void cpu_relax() noexcept {
#if defined(__x86_64__) || defined(__i386__)
    __builtin_ia32_pause();
#elif defined(__aarch64__) || defined(__arm__)
    asm volatile("yield" ::: "memory");
#else
    std::this_thread::yield();
#endif
}

// Bounded spin, then OS yield. Spinning briefly keeps fine-grain streams
// fast on idle cores; yielding promptly keeps oversubscribed machines
// (including single-core ones) live.
class backoff {
public:
    void pause() noexcept {
        if (spins_ < spin_limit) {
            cpu_relax();
            ++spins_;
        } else {
            std::this_thread::yield();
        }
    }
    void reset() noexcept { spins_ = 0; }

private:
    static constexpr int spin_limit = 128;
    int spins_ = 0;
};

// Waits `ticks` relax iterations, then yields; used between send retries.
inline void wait_ticks_then_yield(std::uint32_t ticks) noexcept {
    for (std::uint32_t i = 0; i < ticks; ++i) cpu_relax();
    std::this_thread::yield();
}

} // namespace weft::detail
