#pragma once

#include "weft/detail/backoff.hpp"

#include <chrono>
#include <stdexcept>

namespace weft {

// Start/stop bracket over the monotonic clock. elapsed_ms is defined only
// after stop(); restarting a stopped watch begins a fresh interval.
class stopwatch {
public:
    void start() {
        if (phase_ == phase::started)
            throw std::logic_error("stopwatch: already started");
        begin_ = clock::now();
        phase_ = phase::started;
    }

    void stop() {
        if (phase_ != phase::started)
            throw std::logic_error("stopwatch: stop without start");
        end_ = clock::now();
        phase_ = phase::stopped;
    }

    double elapsed_ms() const {
        if (phase_ != phase::stopped)
            throw std::logic_error("stopwatch: elapsed before stop");
        return std::chrono::duration<double, std::milli>(end_ - begin_).count();
    }

    bool running() const noexcept { return phase_ == phase::started; }

private:
    using clock = std::chrono::steady_clock;
    enum class phase { unset, started, stopped };
    clock::time_point begin_{}, end_{};
    phase phase_ = phase::unset;
};

// Burns CPU for the given duration against the monotonic clock. Synthetic
// task cost must spin, not sleep: sleeping releases the core and corrupts
// speedup measurements.
inline void busy_spin_for(std::chrono::microseconds d) {
    const auto deadline = std::chrono::steady_clock::now() + d;
    while (std::chrono::steady_clock::now() < deadline) detail::cpu_relax();
}

} // namespace weft
