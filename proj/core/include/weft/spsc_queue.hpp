#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace weft {

inline constexpr std::size_t default_queue_capacity = 512;

// Bounded lock-free single-producer single-consumer FIFO.
//
// Exactly one thread may push and exactly one thread may pop; under that
// contract both operations are wait-free. The requested capacity is honored
// exactly (no power-of-two rounding): cursors increase monotonically and
// slots are addressed modulo capacity. Producer and consumer each keep a
// cached copy of the other side's cursor so the hot path usually touches
// only its own cache line.
template <typename T>
class spsc_queue {
public:
    explicit spsc_queue(std::size_t capacity = default_queue_capacity)
        : capacity_(capacity) {
        if (capacity == 0)
            throw std::invalid_argument("spsc_queue: capacity must be >= 1");
        slots_.resize(capacity);
    }

    spsc_queue(const spsc_queue&) = delete;
    spsc_queue& operator=(const spsc_queue&) = delete;

    // Producer side. Moves from `v` only on success; on a full queue the
    // caller keeps ownership.
    bool try_push(T& v) {
        const std::uint64_t tail = tail_.load(std::memory_order_relaxed);
        if (tail - head_cache_ >= capacity_) {
            head_cache_ = head_.load(std::memory_order_acquire);
            if (tail - head_cache_ >= capacity_) return false;
        }
        slots_[tail % capacity_] = std::move(v);
        tail_.store(tail + 1, std::memory_order_release);
        return true;
    }
    bool try_push(T&& v) { return try_push(v); }

    // Consumer side. Moves into `out` on success.
    bool try_pop(T& out) {
        const std::uint64_t head = head_.load(std::memory_order_relaxed);
        if (head == tail_cache_) {
            tail_cache_ = tail_.load(std::memory_order_acquire);
            if (head == tail_cache_) return false;
        }
        out = std::move(slots_[head % capacity_]);
        head_.store(head + 1, std::memory_order_release);
        return true;
    }

    std::size_t capacity() const noexcept { return capacity_; }

    // Racy estimate, exact only at quiescence. Good enough for on-demand
    // scheduling probes and diagnostics.
    std::size_t size_approx() const noexcept {
        const std::uint64_t head = head_.load(std::memory_order_acquire);
        const std::uint64_t tail = tail_.load(std::memory_order_acquire);
        return static_cast<std::size_t>(tail - head);
    }
    bool empty() const noexcept { return size_approx() == 0; }

private:
    static constexpr std::size_t cacheline = 64;

    const std::size_t capacity_;
    std::vector<T> slots_;

    // producer-owned line
    alignas(cacheline) std::atomic<std::uint64_t> tail_{0};
    std::uint64_t head_cache_ = 0;
    // consumer-owned line
    alignas(cacheline) std::atomic<std::uint64_t> head_{0};
    std::uint64_t tail_cache_ = 0;
};

} // namespace weft
