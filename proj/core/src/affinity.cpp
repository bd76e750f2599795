#include "weft/affinity.hpp"

#include <thread>

#if defined(__linux__)
#include <pthread.h>
#include <sched.h>
#endif

namespace weft {

int core_count() noexcept {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

pin_status pin_thread(int cpu_id) noexcept {
#if defined(__linux__)
    if (cpu_id < 0 || cpu_id >= core_count()) return pin_status::error;
    cpu_set_t set;
    CPU_ZERO(&set);
    CPU_SET(static_cast<unsigned>(cpu_id), &set);
    if (pthread_setaffinity_np(pthread_self(), sizeof(set), &set) != 0)
        return pin_status::error;
    return pin_status::ok;
#else
    (void)cpu_id;
    return pin_status::unsupported;
#endif
}

} // namespace weft
