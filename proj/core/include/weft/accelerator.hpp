#pragma once

#include "weft/farm.hpp"
#include "weft/node.hpp"
#include "weft/pipeline.hpp"
#include "weft/stats.hpp"

#include <chrono>
#include <iosfwd>
#include <memory>
#include <vector>

namespace weft {

enum class load_status { item, not_ready, closed };

// Recommended worker count for an accelerator: spare cores, assuming the
// host code itself is not parallel. Never below 1.
int recommended_accelerator_workers() noexcept;

// Runs a farm or pipeline beside the host program. The host offloads tasks
// into the topology's input stream and, when the topology has a terminal
// output (a farm collector, or a pipeline's last stage), retrieves results
// from the output stream.
//
// Single cycle: idle -> run_then_freeze -> offload* -> offload_eos -> wait.
// Exactly one host thread may offload and one may load results; the two
// endpoints are independent, so they may be the same thread alternating or
// two distinct threads.
//
// Keep load_result draining while offloading if results are produced: with
// both queues full and nobody reading results, offload blocks forever (the
// usual bounded-queue cycle).
class accelerator {
public:
    explicit accelerator(std::shared_ptr<farm> topology);
    explicit accelerator(std::shared_ptr<pipeline> topology);

    accelerator(const accelerator&) = delete;
    accelerator& operator=(const accelerator&) = delete;
    ~accelerator();

    // Spawns the topology's threads, which park awaiting input; returns
    // immediately.
    void run_then_freeze();

    // Enqueues one task; blocks while the input queue is full.
    void offload(item task);

    // Ends the input stream; no offload is accepted afterwards.
    void offload_eos();

    // Blocks until a result is available; `closed` once the end-of-stream
    // has flushed through.
    load_status load_result(item& out);
    // Never blocks: not_ready when the stream is open but empty.
    load_status load_result_nb(item& out);

    // Joins the topology; requires offload_eos first (a plain wait would
    // deadlock on a still-open input stream).
    run_report wait();

    bool has_result_channel() const noexcept { return result_expected_; }
    int thread_count() const noexcept { return static_cast<int>(runners_.size()); }

    std::vector<node_stats> last_stats() const;
    void dump_stats(std::ostream& os) const;

private:
    enum class phase { idle, running, draining, stopped };

    void throw_if_not(phase expect, const char* what) const;

    std::shared_ptr<skeleton_base> skeleton_;
    detail::component* wiring_ = nullptr;
    bool result_expected_ = false;
    bool trace_ = false;
    std::size_t capacity_ = default_queue_capacity;

    std::unique_ptr<detail::run_state> state_;
    std::vector<std::unique_ptr<detail::node_runner>> runners_;
    std::unique_ptr<detail::output_port> offload_sink_;
    std::unique_ptr<detail::input_port> result_in_;
    phase phase_ = phase::idle;
    std::chrono::steady_clock::time_point started_at_{};
    double total_ms_ = 0.0;
};

} // namespace weft
